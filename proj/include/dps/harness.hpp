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

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dps/engine.hpp"
#include "dps/metrics.hpp"
#include "dps/trace.hpp"

namespace dps {

// ---- counter bounds checked by fuzz, bench and the acceptance suite ----

// Queue operations per output allowed for the layered psort. Fixed once from
// the per-output shape of the iterator (one pop and one push at each layer
// an output descends through, with slack for the seed push); not tuned.
inline constexpr std::uint64_t kLttPsortFactor = 8;
// Step-counter constant shared by the layered changeval, cut and link
// bounds. Calibrated once over n in [2, 600] and 2^10..2^18, two seeds,
// all three ops (worst observed ratio 193.04, from cut, times 1.5, rounded
// up) and frozen.
inline constexpr double kLttStepFactor = 290.0;

std::uint64_t tt_psort_insert_bound(std::uint64_t n, std::uint64_t k);
std::uint64_t tt_changeval_visit_bound(std::uint64_t n);
std::uint64_t ltt_psort_queue_bound(std::uint64_t n, std::uint64_t k);
// log2 terms use max(n, 4) so the bound stays positive on tiny lists.
// Applies to changeval and cut.
double ltt_update_step_bound(std::uint64_t n);
// Link of two trees whose heights differ by `height_gap`; the gap is taken
// as gap + 1 so equal heights still get a budget.
double ltt_link_step_bound(std::uint64_t n, std::uint64_t height_gap);

// ---- trace execution ----

struct OpRecord {
  std::size_t index = 0;
  OpKind kind = OpKind::kNew;
  // Length of the list the op acted on, before the op.
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::vector<Element> output;  // psort only
  Metrics metrics;
};

struct Execution {
  std::vector<OpRecord> records;
  // Final element sequence of every live list, by label.
  std::map<std::string, std::vector<Element>> finals;
  // Set when the run stopped early.
  std::optional<std::size_t> failed_at;
  std::optional<ErrorCode> error;
  std::string error_detail;
};

// Runs the trace on one engine. Element ids are assigned 1, 2, ... in order
// of appearance, so executions on different engines are comparable. Never
// throws for bad traces or engine errors; those end the run and are
// recorded.
Execution execute(const OpTrace& trace, Engine& engine);

// Thrown by run_trace; `op_index` is the first failing or divergent op.
class TraceFailure : public Error {
 public:
  TraceFailure(ErrorCode code, std::size_t op_index, const std::string& detail);
  std::size_t op_index() const { return op_index_; }

 private:
  std::size_t op_index_;
};

struct RunReport {
  EngineKind engine = EngineKind::kOracle;
  bool verified = false;
  Execution execution;
};

// Executes on `engine`; with `verify`, shadow-runs the naive oracle and
// compares every psort output and the final sequences. Expectations in the
// trace are always checked. Throws TraceFailure (kTraceError or kMismatch).
RunReport run_trace(const OpTrace& trace, EngineKind engine, bool verify);

std::string report_json(const RunReport& report);

// ---- differential fuzzing ----

struct Divergence {
  std::size_t count = 0;
  std::optional<std::size_t> first_op;  // nullopt with count > 0: final lists differ
  std::string detail;
};

Divergence compare(const Execution& a, const Execution& b);

// Deterministic trace over globally distinct values: 40% psort (k in
// [1, 2 size]), 30% changeval, 15% link (a new list when the result would
// exceed max_size), 15% cut. Emptied lists leave the active set.
OpTrace generate_trace(std::uint64_t seed, std::size_t op_count, std::size_t max_size);

using EngineFactory = std::function<std::unique_ptr<Engine>()>;

// Counter-bound violations of one execution on the given engine kind.
std::vector<std::string> check_bounds(const Execution& exec, EngineKind kind);

// Greedy removal of op chunks, halving the chunk size down to single ops,
// while `still_fails` holds.
OpTrace shrink(const OpTrace& trace, const std::function<bool(const OpTrace&)>& still_fails);

struct FuzzConfig {
  std::uint64_t seed = 1;
  std::size_t ops = 1000;
  std::size_t max_size = 64;
  EngineKind first = EngineKind::kLtt;
  EngineKind second = EngineKind::kOracle;
  bool shrink = false;
};

struct FuzzReport {
  FuzzConfig config;
  Divergence divergence;
  std::vector<std::string> bound_violations;
  std::optional<OpTrace> reproducer;

  bool ok() const { return divergence.count == 0 && bound_violations.empty(); }
};

FuzzReport fuzz(const FuzzConfig& config);
FuzzReport fuzz(const FuzzConfig& config, const EngineFactory& first, const EngineFactory& second);

std::string fuzz_json(const FuzzReport& report);

// ---- benchmarking ----

struct BenchConfig {
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> ks;
  EngineKind engine = EngineKind::kLtt;
  std::size_t repeats = 1;
  std::uint64_t seed = 1;
};

struct BenchRow {
  std::string op;
  EngineKind engine = EngineKind::kLtt;
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::size_t repeat = 0;
  Metrics metrics;
};

// For every (n, repeat) builds a random permutation list, then for every k
// measures psort(k), one changeval, one cut and the link undoing it.
std::vector<BenchRow> bench(const BenchConfig& config);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace dps
