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

#include "dps/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "dps/core_tt.hpp"
#include "dps/ltt_core.hpp"
#include "dps/ltt_update.hpp"
#include "json.hpp"

namespace dps {

// ---- bounds ----

std::uint64_t tt_psort_insert_bound(std::uint64_t n, std::uint64_t k) {
  return k * static_cast<std::uint64_t>(ceil_log_golden(std::max<std::uint64_t>(n, 1)) + 1);
}

std::uint64_t tt_changeval_visit_bound(std::uint64_t n) {
  return static_cast<std::uint64_t>(ceil_log_golden(std::max<std::uint64_t>(n, 1)) + 1);
}

std::uint64_t ltt_psort_queue_bound(std::uint64_t n, std::uint64_t k) {
  const int layers = ltt::iterated_log(kGoldenRatio, static_cast<double>(std::max<std::uint64_t>(n, 1)));
  return kLttPsortFactor * static_cast<std::uint64_t>(layers) * k;
}

double ltt_update_step_bound(std::uint64_t n) {
  const double lg = std::log2(static_cast<double>(std::max<std::uint64_t>(n, 4)));
  const double llg = std::log2(lg);
  return kLttStepFactor * lg * llg * llg;
}

double ltt_link_step_bound(std::uint64_t n, std::uint64_t height_gap) {
  const double llg = std::log2(std::log2(static_cast<double>(std::max<std::uint64_t>(n, 4))));
  return kLttStepFactor * static_cast<double>(height_gap + 1) * llg * llg;
}

// ---- execution ----

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

struct Live {
  ListId id;
  std::vector<Element> model;
};

std::size_t select(const std::vector<Element>& model, Value v, const std::string& label) {
  std::size_t found = model.size();
  for (std::size_t i = 0; i < model.size(); ++i) {
    if (model[i].value != v) continue;
    if (found != model.size()) {
      throw Error(ErrorCode::kTraceError, "value " + std::to_string(v) + " is ambiguous in list " + label);
    }
    found = i;
  }
  if (found == model.size()) {
    throw Error(ErrorCode::kTraceError, "no element with value " + std::to_string(v) + " in list " + label);
  }
  return found;
}

std::string values_text(const std::vector<Element>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i].value);
  return s + "]";
}

std::vector<Value> values_of(const std::vector<Element>& xs) {
  std::vector<Value> out;
  out.reserve(xs.size());
  for (const Element& e : xs) out.push_back(e.value);
  return out;
}

json metrics_json(const Metrics& m) {
  return json{{"comparisons", m.comparisons}, {"pq_inserts", m.pq_inserts},
              {"pq_deletes", m.pq_deletes},   {"nodes_visited", m.nodes_visited},
              {"rotations", m.rotations},     {"expose_iterations", m.expose_iterations},
              {"wall_time_ns", m.wall_time_ns}};
}

}  // namespace

Execution execute(const OpTrace& trace, Engine& engine) {
  Execution ex;
  std::map<std::string, Live> lists;
  ElementId next_id = 1;

  auto get = [&lists](const std::string& label) -> Live& {
    auto it = lists.find(label);
    if (it == lists.end()) throw Error(ErrorCode::kTraceError, "unknown list label '" + label + "'");
    return it->second;
  };
  auto claim = [&lists](const std::string& label) {
    if (lists.count(label)) throw Error(ErrorCode::kTraceError, "list label '" + label + "' already in use");
  };

  for (std::size_t i = 0; i < trace.ops.size(); ++i) {
    const TraceOp& op = trace.ops[i];
    OpRecord rec;
    rec.index = i;
    rec.kind = op.kind;
    Clock::time_point start;
    auto begin = [&] {
      engine.metrics().reset();
      start = Clock::now();
    };
    try {
      switch (op.kind) {
        case OpKind::kNew: {
          claim(op.list);
          if (op.values.empty()) throw Error(ErrorCode::kTraceError, "new list '" + op.list + "' has no values");
          std::vector<Element> elems;
          for (Value v : op.values) elems.push_back(Element{next_id++, v});
          rec.n = elems.size();
          begin();
          ListId id = engine.create(elems);
          lists.emplace(op.list, Live{id, std::move(elems)});
          break;
        }
        case OpKind::kPsort: {
          Live& l = get(op.list);
          rec.n = l.model.size();
          rec.k = op.k;
          begin();
          rec.output = engine.psort(l.id, op.k);
          break;
        }
        case OpKind::kChangeval: {
          Live& l = get(op.list);
          const std::size_t pos = select(l.model, op.elem, op.list);
          rec.n = l.model.size();
          begin();
          engine.changeval(l.id, l.model[pos].id, op.value);
          l.model[pos].value = op.value;
          break;
        }
        case OpKind::kLink: {
          if (op.a == op.b) throw Error(ErrorCode::kTraceError, "link of list '" + op.a + "' with itself");
          Live a = get(op.a);
          Live b = get(op.b);
          lists.erase(op.a);
          lists.erase(op.b);
          claim(op.out);
          rec.n = a.model.size() + b.model.size();
          begin();
          ListId id = engine.link(a.id, b.id);
          a.model.insert(a.model.end(), b.model.begin(), b.model.end());
          lists.emplace(op.out, Live{id, std::move(a.model)});
          break;
        }
        case OpKind::kCut: {
          Live l = get(op.list);
          const std::size_t pos = select(l.model, op.elem, op.list);
          lists.erase(op.list);
          if (op.out_first == op.out_second) throw Error(ErrorCode::kTraceError, "cut outputs share a label");
          claim(op.out_first);
          claim(op.out_second);
          rec.n = l.model.size();
          begin();
          auto [first, second] = engine.cut(l.id, l.model[pos].id);
          const auto split = l.model.begin() + static_cast<std::ptrdiff_t>(pos) + 1;
          lists.emplace(op.out_first, Live{first, std::vector<Element>(l.model.begin(), split)});
          lists.emplace(op.out_second, Live{second, std::vector<Element>(split, l.model.end())});
          break;
        }
      }
      rec.metrics = engine.metrics();
      rec.metrics.wall_time_ns =
          static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
      ex.records.push_back(std::move(rec));
    } catch (const Error& e) {
      ex.failed_at = i;
      ex.error = e.code();
      ex.error_detail = e.detail();
      break;
    }
  }
  for (const auto& [label, live] : lists) {
    try {
      ex.finals[label] = engine.sequence(live.id);
    } catch (const Error& e) {
      if (!ex.error) {
        ex.failed_at = trace.ops.size();
        ex.error = e.code();
        ex.error_detail = e.detail();
      }
    }
  }
  return ex;
}

TraceFailure::TraceFailure(ErrorCode code, std::size_t op_index, const std::string& detail)
    : Error(code, "op " + std::to_string(op_index) + ": " + detail), op_index_(op_index) {}

RunReport run_trace(const OpTrace& trace, EngineKind engine, bool verify) {
  RunReport report;
  report.engine = engine;
  report.verified = verify;
  auto e = make_engine(engine);
  report.execution = execute(trace, *e);
  const Execution& x = report.execution;

  // Expectations and the shadow run can both fail; report the earlier op.
  std::optional<std::pair<std::size_t, std::string>> expect_fail;
  for (const OpRecord& rec : x.records) {
    const auto& want = trace.ops[rec.index].expect;
    if (rec.kind == OpKind::kPsort && want && values_of(rec.output) != *want) {
      json w = *want;
      expect_fail = {rec.index, "expected " + w.dump() + ", got " + values_text(rec.output)};
      break;
    }
  }
  std::optional<Divergence> diverged;
  if (verify) {
    auto oracle = make_engine(EngineKind::kOracle);
    Divergence d = compare(x, execute(trace, *oracle));
    if (d.count > 0) diverged = d;
  }
  const std::size_t end = trace.ops.size();
  const std::size_t fail_at = x.failed_at.value_or(end);
  const std::size_t expect_at = expect_fail ? expect_fail->first : end;
  const std::size_t diverge_at = diverged ? diverged->first_op.value_or(end) : end;

  if (x.failed_at && fail_at <= expect_at && fail_at <= diverge_at) {
    throw TraceFailure(*x.error, fail_at, x.error_detail);
  }
  if (expect_fail && expect_at <= diverge_at) throw TraceFailure(ErrorCode::kMismatch, expect_at, expect_fail->second);
  if (diverged) throw TraceFailure(ErrorCode::kMismatch, diverge_at, diverged->detail);
  return report;
}

std::string report_json(const RunReport& report) {
  const Execution& x = report.execution;
  json outputs = json::array();
  json per_op = json::array();
  for (const OpRecord& rec : x.records) {
    if (rec.kind == OpKind::kPsort) {
      outputs.push_back(json{{"op", rec.index}, {"k", rec.k}, {"values", values_of(rec.output)}});
    }
    json m = metrics_json(rec.metrics);
    m["op"] = rec.index;
    m["kind"] = std::string(to_string(rec.kind));
    m["n"] = rec.n;
    per_op.push_back(std::move(m));
  }
  json finals = json::object();
  for (const auto& [label, seq] : x.finals) finals[label] = values_of(seq);
  json j{{"engine", std::string(to_string(report.engine))},
         {"verified", report.verified},
         {"ok", true},
         {"outputs", std::move(outputs)},
         {"finals", std::move(finals)},
         {"metrics", std::move(per_op)}};
  return j.dump();
}

// ---- fuzzing ----

Divergence compare(const Execution& a, const Execution& b) {
  Divergence d;
  auto note = [&d](std::optional<std::size_t> op, std::string what) {
    ++d.count;
    if (d.detail.empty() || (op && (!d.first_op || *op < *d.first_op))) {
      d.first_op = op;
      d.detail = std::move(what);
    }
  };
  const std::size_t common = std::min(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < common; ++i) {
    const OpRecord& ra = a.records[i];
    const OpRecord& rb = b.records[i];
    if (ra.kind == OpKind::kPsort && ra.output != rb.output) {
      note(ra.index, "op " + std::to_string(ra.index) + " psort k=" + std::to_string(ra.k) + ": " +
                         values_text(ra.output) + " vs " + values_text(rb.output));
    }
  }
  if (a.failed_at != b.failed_at || a.error != b.error) {
    const std::size_t at = std::min(a.failed_at.value_or(SIZE_MAX), b.failed_at.value_or(SIZE_MAX));
    note(at, "op " + std::to_string(at) + " failed on one side only: " +
                 (a.error ? a.error_detail : b.error_detail));
    return d;
  }
  if (a.error) return d;
  std::set<std::string> labels;
  for (const auto& [l, s] : a.finals) labels.insert(l);
  for (const auto& [l, s] : b.finals) labels.insert(l);
  for (const std::string& l : labels) {
    auto ia = a.finals.find(l);
    auto ib = b.finals.find(l);
    if (ia == a.finals.end() || ib == b.finals.end() || ia->second != ib->second) {
      note(std::nullopt, "final list " + l + " differs");
    }
  }
  return d;
}

OpTrace generate_trace(std::uint64_t seed, std::size_t op_count, std::size_t max_size) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
  };
  const std::size_t cap = std::max<std::size_t>(max_size, 1);
  std::set<Value> used;
  auto fresh = [&] {
    constexpr Value kSpan = Value{1} << 40;
    while (true) {
      const Value v = static_cast<Value>(uniform(0, 2 * kSpan)) - kSpan;
      if (used.insert(v).second) return v;
    }
  };
  struct Shadow {
    std::string label;
    std::vector<Value> values;
  };
  std::vector<Shadow> active;
  std::size_t next_label = 0;
  auto label = [&next_label] { return "L" + std::to_string(next_label++); };

  OpTrace trace;
  auto emit_new = [&] {
    TraceOp op;
    op.kind = OpKind::kNew;
    op.list = label();
    const std::size_t size = uniform(1, std::max<std::size_t>(1, cap / 4));
    for (std::size_t i = 0; i < size; ++i) op.values.push_back(fresh());
    active.push_back({op.list, op.values});
    trace.ops.push_back(std::move(op));
  };

  while (trace.ops.size() < op_count) {
    if (active.empty()) {
      emit_new();
      continue;
    }
    const std::uint64_t roll = uniform(0, 99);
    const std::size_t pick = uniform(0, active.size() - 1);
    Shadow& s = active[pick];
    TraceOp op;
    if (roll < 40) {
      op.kind = OpKind::kPsort;
      op.list = s.label;
      op.k = uniform(1, 2 * s.values.size());
    } else if (roll < 70) {
      op.kind = OpKind::kChangeval;
      op.list = s.label;
      Value& target = s.values[uniform(0, s.values.size() - 1)];
      op.elem = target;
      op.value = fresh();
      target = op.value;
    } else if (roll < 85) {
      std::size_t other = active.size() < 2 ? pick : uniform(0, active.size() - 2);
      if (other >= pick) ++other;
      if (active.size() < 2 || s.values.size() + active[other].values.size() > cap) {
        emit_new();
        continue;
      }
      op.kind = OpKind::kLink;
      op.a = s.label;
      op.b = active[other].label;
      op.out = label();
      Shadow joined{op.out, s.values};
      joined.values.insert(joined.values.end(), active[other].values.begin(), active[other].values.end());
      const std::size_t hi = std::max(pick, other);
      const std::size_t lo = std::min(pick, other);
      active.erase(active.begin() + static_cast<std::ptrdiff_t>(hi));
      active.erase(active.begin() + static_cast<std::ptrdiff_t>(lo));
      active.push_back(std::move(joined));
    } else {
      op.kind = OpKind::kCut;
      op.list = s.label;
      const std::size_t pos = uniform(0, s.values.size() - 1);
      op.elem = s.values[pos];
      op.out_first = label();
      op.out_second = label();
      Shadow head{op.out_first, {s.values.begin(), s.values.begin() + static_cast<std::ptrdiff_t>(pos) + 1}};
      Shadow tail{op.out_second, {s.values.begin() + static_cast<std::ptrdiff_t>(pos) + 1, s.values.end()}};
      active.erase(active.begin() + static_cast<std::ptrdiff_t>(pick));
      active.push_back(std::move(head));
      if (!tail.values.empty()) active.push_back(std::move(tail));
    }
    trace.ops.push_back(std::move(op));
  }
  return trace;
}

std::vector<std::string> check_bounds(const Execution& exec, EngineKind kind) {
  std::vector<std::string> out;
  auto flag = [&out](const OpRecord& r, const std::string& what, double got, double bound) {
    if (got <= bound) return;
    std::ostringstream os;
    os << "op " << r.index << " " << to_string(r.kind) << " n=" << r.n << " k=" << r.k << ": " << what << " " << got
       << " > " << bound;
    out.push_back(os.str());
  };
  for (const OpRecord& r : exec.records) {
    const Metrics& m = r.metrics;
    if (kind == EngineKind::kTt) {
      if (r.kind == OpKind::kPsort) {
        flag(r, "pq_inserts", static_cast<double>(m.pq_inserts), static_cast<double>(tt_psort_insert_bound(r.n, r.k)));
      } else if (r.kind == OpKind::kChangeval) {
        flag(r, "nodes_visited", static_cast<double>(m.nodes_visited), static_cast<double>(tt_changeval_visit_bound(r.n)));
      }
    } else if (kind == EngineKind::kLtt) {
      if (r.kind == OpKind::kPsort) {
        flag(r, "queue_ops", static_cast<double>(m.queue_ops()), static_cast<double>(ltt_psort_queue_bound(r.n, r.k)));
      } else if (r.kind == OpKind::kChangeval || r.kind == OpKind::kCut) {
        flag(r, "steps", static_cast<double>(m.nodes_visited), ltt_update_step_bound(r.n));
      }
    }
  }
  return out;
}

OpTrace shrink(const OpTrace& trace, const std::function<bool(const OpTrace&)>& still_fails) {
  OpTrace cur = trace;
  std::size_t chunk = std::max<std::size_t>(1, cur.ops.size() / 2);
  while (true) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t start = 0; start < cur.ops.size();) {
        OpTrace cand;
        const std::size_t stop = std::min(cur.ops.size(), start + chunk);
        cand.ops.insert(cand.ops.end(), cur.ops.begin(), cur.ops.begin() + static_cast<std::ptrdiff_t>(start));
        cand.ops.insert(cand.ops.end(), cur.ops.begin() + static_cast<std::ptrdiff_t>(stop), cur.ops.end());
        if (!cand.ops.empty() && still_fails(cand)) {
          cur = std::move(cand);
          progress = true;
        } else {
          start += chunk;
        }
      }
    }
    if (chunk == 1) break;
    chunk /= 2;
  }
  return cur;
}

FuzzReport fuzz(const FuzzConfig& config) {
  return fuzz(
      config, [&] { return make_engine(config.first); }, [&] { return make_engine(config.second); });
}

FuzzReport fuzz(const FuzzConfig& config, const EngineFactory& first, const EngineFactory& second) {
  FuzzReport report;
  report.config = config;
  const OpTrace trace = generate_trace(config.seed, config.ops, config.max_size);

  auto ea = first();
  auto eb = second();
  const Execution xa = execute(trace, *ea);
  const Execution xb = execute(trace, *eb);
  report.divergence = compare(xa, xb);
  report.bound_violations = check_bounds(xa, ea->kind());
  for (std::string& v : check_bounds(xb, eb->kind())) report.bound_violations.push_back(std::move(v));

  if (report.divergence.count > 0 && config.shrink) {
    auto fails = [&](const OpTrace& t) {
      auto a = first();
      auto b = second();
      return compare(execute(t, *a), execute(t, *b)).count > 0;
    };
    OpTrace start = trace;
    if (report.divergence.first_op && *report.divergence.first_op + 1 < trace.ops.size()) {
      OpTrace cut;
      cut.ops.assign(trace.ops.begin(), trace.ops.begin() + static_cast<std::ptrdiff_t>(*report.divergence.first_op) + 1);
      if (fails(cut)) start = std::move(cut);
    }
    report.reproducer = shrink(start, fails);
  }
  return report;
}

std::string fuzz_json(const FuzzReport& r) {
  json details = json::array();
  for (std::size_t i = 0; i < r.bound_violations.size() && i < 20; ++i) details.push_back(r.bound_violations[i]);
  json j{{"ok", r.ok()},
         {"seed", r.config.seed},
         {"ops", r.config.ops},
         {"max_size", r.config.max_size},
         {"pair", std::string(to_string(r.config.first)) + ":" + std::string(to_string(r.config.second))},
         {"mismatches", r.divergence.count},
         {"first_mismatch_op", nullptr},
         {"detail", r.divergence.detail},
         {"bound_violations", r.bound_violations.size()},
         {"bound_details", std::move(details)},
         {"reproducer", nullptr}};
  if (r.divergence.first_op) j["first_mismatch_op"] = *r.divergence.first_op;
  if (r.reproducer) {
    json ops = json::array();
    for (const TraceOp& op : r.reproducer->ops) ops.push_back(json::parse(to_json_line(op)));
    j["reproducer"] = std::move(ops);
  }
  return j.dump();
}

// ---- benchmarking ----

std::vector<BenchRow> bench(const BenchConfig& config) {
  std::vector<BenchRow> rows;
  for (std::size_t n : config.sizes) {
    if (n == 0) continue;
    for (std::size_t rep = 0; rep < config.repeats; ++rep) {
      std::seed_seq sseq{config.seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(rep)};
      std::mt19937_64 rng(sseq);
      std::vector<Value> perm(n);
      std::iota(perm.begin(), perm.end(), Value{0});
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<Element> elems;
      elems.reserve(n);
      for (Value v : perm) elems.push_back(Element{next_element_id(), v});

      auto engine = make_engine(config.engine);
      ListId list = engine->create(elems);
      std::vector<std::uint64_t> teams;
      if (auto* l = dynamic_cast<LttEngine*>(engine.get())) teams = ltt::team_size_maxima(l->forest(), l->root(list));
      Value next_value = static_cast<Value>(n);

      for (std::size_t k : config.ks) {
        auto measure = [&](const char* op, auto&& fn) {
          engine->metrics().reset();
          const auto t0 = Clock::now();
          fn();
          BenchRow row{op, config.engine, n, k, rep, engine->metrics()};
          row.metrics.wall_time_ns =
              static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count());
          rows.push_back(std::move(row));
        };
        measure("psort", [&] { engine->psort(list, k); });
        rows.back().metrics.team_size_max = teams;

        const Element& target = elems[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)];
        measure("changeval", [&] { engine->changeval(list, target.id, next_value++); });

        const Element& at = elems[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)];
        std::pair<ListId, ListId> parts;
        measure("cut", [&] { parts = engine->cut(list, at.id); });
        measure("link", [&] { list = engine->link(parts.first, parts.second); });
      }
    }
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "op,engine,n,k,repeat,comparisons,pq_inserts,pq_deletes,nodes_visited,rotations,expose_iterations,wall_time_ns\n";
  for (const BenchRow& r : rows) {
    const Metrics& m = r.metrics;
    out << r.op << ',' << to_string(r.engine) << ',' << r.n << ',' << r.k << ',' << r.repeat << ',' << m.comparisons
        << ',' << m.pq_inserts << ',' << m.pq_deletes << ',' << m.nodes_visited << ',' << m.rotations << ','
        << m.expose_iterations << ',' << m.wall_time_ns << '\n';
  }
}

}  // namespace dps
