// Copyright 2026 The dps Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "dps/harness.hpp"
#include "dps/ltt_core.hpp"
#include "dps/ltt_update.hpp"
#include "dps/tt_dynamic.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t effective_seed(std::uint64_t flag) {
  const char* env = std::getenv("DPS_SEED");
  if (env == nullptr || *env == '\0') return flag;
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("DPS_SEED is not an unsigned integer: ") + env);
  }
}

dps::EngineKind engine_arg(const std::string& name) {
  try {
    return dps::parse_engine(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int cmd_run(const std::string& path, const std::string& engine_name, bool verify) {
  const dps::EngineKind engine = engine_arg(engine_name);
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read trace file " + path);
  try {
    const dps::OpTrace trace = dps::parse_trace(in);
    std::cout << dps::report_json(dps::run_trace(trace, engine, verify)) << '\n';
    return kOk;
  } catch (const dps::TraceFailure& e) {
    std::cout << json{{"ok", false},
                      {"engine", engine_name},
                      {"error", std::string(dps::to_string(e.code()))},
                      {"op_index", e.op_index()},
                      {"detail", e.detail()}}
                     .dump()
              << '\n';
    return e.code() == dps::ErrorCode::kTraceError ? kUsage : kFailed;
  } catch (const dps::Error& e) {
    std::cout << json{{"ok", false}, {"engine", engine_name}, {"error", std::string(dps::to_string(e.code()))},
                      {"detail", e.detail()}}
                     .dump()
              << '\n';
    return kUsage;
  }
}

int cmd_fuzz(std::uint64_t seed, std::size_t ops, std::size_t max_size, const std::string& pair, bool shrink) {
  const auto colon = pair.find(':');
  if (colon == std::string::npos) throw UsageError("--pair must look like A:B");
  dps::FuzzConfig config;
  config.seed = effective_seed(seed);
  config.ops = ops;
  config.max_size = max_size;
  config.first = engine_arg(pair.substr(0, colon));
  config.second = engine_arg(pair.substr(colon + 1));
  config.shrink = shrink;
  if (ops == 0) throw UsageError("--ops must be at least 1");
  const dps::FuzzReport report = dps::fuzz(config);
  std::cout << dps::fuzz_json(report) << '\n';
  return report.ok() ? kOk : kFailed;
}

int cmd_bench(const std::vector<std::size_t>& sizes, const std::vector<std::size_t>& ks, const std::string& engine,
              std::size_t repeats, std::uint64_t seed, const std::string& out_path) {
  dps::BenchConfig config;
  config.sizes = sizes;
  config.ks = ks;
  config.engine = engine_arg(engine);
  config.repeats = repeats;
  config.seed = effective_seed(seed);
  for (std::size_t n : sizes) {
    if (n == 0) throw UsageError("sizes must be positive");
  }
  for (std::size_t k : ks) {
    if (k == 0) throw UsageError("ks must be positive");
  }
  std::ofstream out(out_path);
  if (!out) throw UsageError("cannot write " + out_path);
  const auto rows = dps::bench(config);
  dps::write_bench_csv(out, rows);
  std::cout << json{{"ok", true}, {"rows", rows.size()}, {"out", out_path}}.dump() << '\n';
  return kOk;
}

int cmd_check(const std::string& engine_name, std::size_t n, std::uint64_t flag_seed) {
  const dps::EngineKind kind = engine_arg(engine_name);
  if (n == 0) throw UsageError("--n must be at least 1");
  const std::uint64_t seed = effective_seed(flag_seed);
  std::mt19937_64 rng(seed);
  std::vector<dps::Value> perm(n);
  std::iota(perm.begin(), perm.end(), dps::Value{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<dps::Element> elems;
  for (dps::Value v : perm) elems.push_back({dps::next_element_id(), v});

  auto engine = dps::make_engine(kind);
  const dps::ListId list = engine->create(elems);
  const dps::ValidationReport report = engine->validate(list);

  json j{{"engine", engine_name}, {"n", n}, {"seed", seed}, {"ok", report.ok}};
  if (auto* t = dynamic_cast<dps::TtEngine*>(engine.get())) {
    j["height"] = t->forest().height(t->tree(list).root);
  } else if (auto* l = dynamic_cast<dps::LttEngine*>(engine.get())) {
    j["height"] = l->forest().height(l->root(list));
    j["layer_number"] = dps::ltt::layer_number(l->forest(), l->root(list));
    j["team_size_max"] = dps::ltt::team_size_maxima(l->forest(), l->root(list));
  }
  json violations = json::array();
  for (const auto& v : report.violations) violations.push_back(json{{"rule", v.rule}, {"detail", v.detail}});
  j["violations"] = std::move(violations);
  std::cout << j.dump() << '\n';
  return report.ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic partial sorting: run traces, fuzz, benchmark and validate"};
  app.require_subcommand(1);

  std::string trace_path, engine = "ltt", pair = "ltt:oracle", out_path;
  bool verify = false, shrink = false;
  std::uint64_t seed = 1;
  std::size_t ops = 1000, max_size = 512, repeats = 1, n = 0;
  std::vector<std::size_t> sizes, ks;

  auto* run = app.add_subcommand("run", "Execute a JSON-lines trace");
  run->add_option("--trace", trace_path, "Trace file")->required();
  run->add_option("--engine", engine, "tt | ltt | oracle | pq")->required();
  run->add_flag("--verify", verify, "Shadow-run the oracle and compare");

  auto* fz = app.add_subcommand("fuzz", "Differential fuzzing of two engines");
  fz->add_option("--seed", seed, "Generator seed (DPS_SEED overrides)");
  fz->add_option("--ops", ops, "Number of operations");
  fz->add_option("--max-size", max_size, "Largest list the generator builds");
  fz->add_option("--pair", pair, "Engines to compare, e.g. ltt:oracle");
  fz->add_flag("--shrink", shrink, "Minimize the trace on mismatch");

  auto* bn = app.add_subcommand("bench", "Counter benchmark to CSV");
  bn->add_option("--sizes", sizes, "Comma-separated list sizes")->required()->delimiter(',');
  bn->add_option("--ks", ks, "Comma-separated k values")->required()->delimiter(',');
  bn->add_option("--engine", engine, "tt | ltt | oracle | pq")->required();
  bn->add_option("--repeats", repeats, "Repeats per size");
  bn->add_option("--seed", seed, "Seed (DPS_SEED overrides)");
  bn->add_option("--out", out_path, "CSV output file")->required();

  auto* ck = app.add_subcommand("check", "Build a random structure and validate it");
  ck->add_option("--engine", engine, "tt | ltt | oracle | pq")->required();
  ck->add_option("--n", n, "Element count")->required();
  ck->add_option("--seed", seed, "Seed (DPS_SEED overrides)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (run->parsed()) return cmd_run(trace_path, engine, verify);
    if (fz->parsed()) return cmd_fuzz(seed, ops, max_size, pair, shrink);
    if (bn->parsed()) return cmd_bench(sizes, ks, engine, repeats, seed, out_path);
    if (ck->parsed()) return cmd_check(engine, n, seed);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}
