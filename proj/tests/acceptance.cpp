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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <unordered_set>

#include "dps/harness.hpp"
#include "dps/ltt_update.hpp"
#include "dps/tt_dynamic.hpp"
#include "support.hpp"

namespace {

using namespace dps;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string note;
};

// Records the first failure; later ones only bump the count.
struct Checker {
  Outcome out;
  std::size_t failures = 0;
  void expect(bool cond, const std::string& what) {
    if (cond) return;
    if (failures++ == 0) out.note = what;
    out.pass = false;
  }
  Outcome done(const std::string& summary) {
    if (out.pass) {
      out.note = summary;
    } else {
      out.note += " (" + std::to_string(failures) + " failures)";
    }
    return out;
  }
};

std::string join(const std::vector<std::uint64_t>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

Outcome differential_fuzz() {
  Checker c;
  std::size_t runs = 0;
  double worst = 0;
  for (EngineKind engine : {EngineKind::kTt, EngineKind::kLtt}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      FuzzConfig cfg;
      cfg.seed = seed;
      cfg.ops = 10000;
      cfg.max_size = 512;
      cfg.first = engine;
      cfg.second = EngineKind::kOracle;
      const auto start = Clock::now();
      FuzzReport r = fuzz(cfg);
      const double secs = std::chrono::duration<double>(Clock::now() - start).count();
      worst = std::max(worst, secs);
      ++runs;
      const std::string tag = std::string(to_string(engine)) + ":oracle seed " + std::to_string(seed);
      c.expect(r.divergence.count == 0, tag + ": " + std::to_string(r.divergence.count) + " mismatches, " + r.divergence.detail);
      c.expect(r.bound_violations.empty(), tag + ": " + (r.bound_violations.empty() ? "" : r.bound_violations[0]));
      c.expect(secs < 60, tag + ": took " + std::to_string(secs) + " s");
    }
  }
  std::ostringstream s;
  s << runs << " runs, 0 mismatches, slowest " << worst << " s";
  return c.done(s.str());
}

Outcome reference_fixtures() {
  Checker c;
  const OpTrace first = parse_trace_string(
      "{\"op\":\"new\",\"list\":\"L\",\"values\":[3,6,9,2,4,7,8]}\n"
      "{\"op\":\"psort\",\"list\":\"L\",\"k\":1,\"expect\":[2]}\n");
  const OpTrace second = parse_trace_string(
      "{\"op\":\"new\",\"list\":\"L\",\"values\":[3,9,5,7,8,4,6]}\n"
      "{\"op\":\"psort\",\"list\":\"L\",\"k\":1,\"expect\":[3]}\n");
  for (EngineKind kind : {EngineKind::kTt, EngineKind::kLtt}) {
    for (const OpTrace* t : {&first, &second}) {
      try {
        run_trace(*t, kind, true);
      } catch (const Error& e) {
        c.expect(false, std::string(to_string(kind)) + ": " + e.what());
      }
    }
  }
  TtEngine tt_engine;
  ListId l1 = tt_engine.create(testing::make_elements({3, 6, 9, 2, 4, 7, 8}));
  c.expect(tt_engine.forest().key(tt_engine.tree(l1).root).value == 2, "first fixture root is not 2");

  Forest f;
  auto elems = testing::make_elements({3, 9, 5, 7, 8, 4, 6});
  NodeId root = ltt::build(f, elems);
  auto team_values = [&f](NodeId leaf) {
    std::vector<Value> out;
    for (const Key& k : ltt::team_of(f, leaf)) out.push_back(k.value);
    return out;
  };
  auto leaf_with = [&](Value v) {
    for (NodeId x : tt::leaves(f, root)) {
      if (f.key(x).value == v) return x;
    }
    return NodeId{};
  };
  c.expect(f.key(root).value == 3, "second fixture root is not 3");
  c.expect(team_values(leaf_with(3)) == std::vector<Value>{4, 5, 9}, "team of 3 is not [4,5,9]");
  c.expect(team_values(leaf_with(5)) == std::vector<Value>{7}, "team of 5 is not [7]");
  c.expect(team_values(leaf_with(4)) == std::vector<Value>{6, 8}, "team of 4 is not [6,8]");
  c.expect(ltt::layer_number(f, root) == 3, "layer number is not 3");
  c.expect(ltt::validate(f, root).ok, "second fixture does not validate");
  return c.done("roots 2 and 3, teams [4,5,9] [7] [6,8], layer number 3");
}

Outcome height_bound() {
  Checker c;
  std::mt19937_64 rng(301);
  int tallest = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = testing::uniform(rng, 1, 100000);
    Forest f;
    auto elems = testing::random_elements(rng, n, -1000000, 1000000);
    TournamentTree t = tt::build(f, elems);
    const int h = f.height(t.root);
    tallest = std::max(tallest, h);
    c.expect(golden_power_at_most(h, n), "n=" + std::to_string(n) + " height " + std::to_string(h) + " exceeds log_phi(n)");
    c.expect(min_leaves_for_height(h) <= n, "n=" + std::to_string(n) + " below f(" + std::to_string(h) + ")");
    // Every subtree of height h' also holds at least f(h') leaves.
    std::function<std::uint64_t(NodeId)> count = [&](NodeId x) -> std::uint64_t {
      if (f.is_leaf(x)) return 1;
      const std::uint64_t m = count(f.left(x)) + count(f.right(x));
      c.expect(m >= min_leaves_for_height(f.height(x)), "subtree below f(h)");
      return m;
    };
    if (i % 10 == 0) count(t.root);
  }
  return c.done("1000 builds, n in [1, 1e5], tallest height " + std::to_string(tallest));
}

Outcome layer_bound() {
  Checker c;
  std::mt19937_64 rng(401);
  Forest f;
  auto elems = testing::random_permutation(rng, 1000000);
  NodeId root = ltt::build(f, elems);
  const int layers = ltt::layer_number(f, root);
  const auto sizes = ltt::team_size_maxima(f, root);
  c.expect(layers <= 6, "layer number " + std::to_string(layers) + " > 6");
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    // Each layer's largest team is at most log_phi of the one above, checked exactly.
    c.expect(golden_power_at_most(static_cast<int>(sizes[i]), sizes[i - 1]),
             "chain breaks at layer " + std::to_string(i) + ": " + join(sizes));
  }
  c.expect(ltt::validate(f, root).ok, "10^6 structure does not validate");
  return c.done("layer number " + std::to_string(layers) + ", max team sizes " + join(sizes));
}

Outcome candidate_invariant() {
  Checker c;
  std::mt19937_64 rng(501);
  std::size_t checks = 0;
  for (int i = 0; i < 500; ++i) {
    LttEngine e;
    auto elems = testing::random_elements(rng, testing::uniform(rng, 1, 64), -40, 40);
    ListId l = e.create(elems);
    auto it = e.iterator(l);
    std::vector<NodeId> outputs;
    for (NodeId x = it.next(); !x.is_nil(); x = it.next()) {
      outputs.push_back(x);
      it.prime();
      const auto q = it.queued();
      const std::unordered_set<NodeId> queued(q.begin(), q.end());
      c.expect(queued.size() == q.size(), "duplicate queue entry");
      c.expect(queued == ltt::candidate_set_bruteforce(e.forest(), outputs),
               "list " + std::to_string(i) + " after output " + std::to_string(outputs.size()));
      ++checks;
    }
    c.expect(outputs.size() == elems.size(), "iterator stopped early");
  }
  return c.done("500 lists, " + std::to_string(checks) + " queue/candidate comparisons equal");
}

Outcome counter_bounds() {
  Checker c;
  std::mt19937_64 rng(601);
  double worst_tt_psort = 0, worst_tt_change = 0, worst_ltt_psort = 0, worst_ltt_change = 0;
  for (std::size_t n : {std::size_t{1} << 10, std::size_t{1} << 14, std::size_t{1} << 18}) {
    auto elems = testing::random_permutation(rng, n);
    TtEngine tt_engine;
    LttEngine ltt_engine;
    ListId a = tt_engine.create(elems);
    ListId b = ltt_engine.create(elems);
    const std::string at = " at n=" + std::to_string(n);
    for (std::size_t k : {1, 16, 256}) {
      tt_engine.metrics().reset();
      tt_engine.psort(a, k);
      const auto tb = tt_psort_insert_bound(n, k);
      worst_tt_psort = std::max(worst_tt_psort, double(tt_engine.metrics().pq_inserts) / double(tb));
      c.expect(tt_engine.metrics().pq_inserts <= tb, "tt psort inserts" + at + " k=" + std::to_string(k));

      ltt_engine.metrics().reset();
      ltt_engine.psort(b, k);
      const auto lb = ltt_psort_queue_bound(n, k);
      worst_ltt_psort = std::max(worst_ltt_psort, double(ltt_engine.metrics().queue_ops()) / double(lb));
      c.expect(ltt_engine.metrics().queue_ops() <= lb, "ltt psort queue ops" + at + " k=" + std::to_string(k));
    }
    for (int i = 0; i < 200; ++i) {
      const Element& x = elems[testing::uniform(rng, 0, n - 1)];
      const auto v = static_cast<Value>(testing::uniform(rng, 1, 2 * n));
      tt_engine.metrics().reset();
      tt_engine.changeval(a, x.id, v);
      const auto tb = tt_changeval_visit_bound(n);
      worst_tt_change = std::max(worst_tt_change, double(tt_engine.metrics().nodes_visited) / double(tb));
      c.expect(tt_engine.metrics().nodes_visited <= tb, "tt changeval visits" + at);

      ltt_engine.metrics().reset();
      ltt_engine.changeval(b, x.id, v);
      const double lb = ltt_update_step_bound(n);
      worst_ltt_change = std::max(worst_ltt_change, double(ltt_engine.metrics().nodes_visited) / lb);
      c.expect(double(ltt_engine.metrics().nodes_visited) <= lb, "ltt changeval steps" + at);
    }
  }
  std::ostringstream s;
  s.precision(3);
  s << "worst used fraction of bound: tt psort " << worst_tt_psort << ", tt changeval " << worst_tt_change
    << ", ltt psort " << worst_ltt_psort << ", ltt changeval " << worst_ltt_change;
  return c.done(s.str());
}

Outcome cut_link_inverse() {
  Checker c;
  std::mt19937_64 rng(701);
  for (int i = 0; i < 1000; ++i) {
    auto elems = testing::random_elements(rng, testing::uniform(rng, 1, 1000));
    const ElementId at = elems[testing::uniform(rng, 0, elems.size() - 1)].id;
    const auto want = testing::ids_of(elems);
    TtEngine tt_engine;
    auto [a, b] = tt_engine.cut(tt_engine.create(elems), at);
    ListId t = tt_engine.link(a, b);
    c.expect(testing::ids_of(tt_engine.sequence(t)) == want && tt_engine.validate(t).ok, "tt case " + std::to_string(i));
    LttEngine ltt_engine;
    auto [x, y] = ltt_engine.cut(ltt_engine.create(elems), at);
    ListId u = ltt_engine.link(x, y);
    c.expect(testing::ids_of(ltt_engine.sequence(u)) == want && ltt_engine.validate(u).ok, "ltt case " + std::to_string(i));
  }
  return c.done("1000 cut points, sequences restored on tt and ltt");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "differential fuzz", 1200, differential_fuzz},
      {2, "reference fixtures", 5, reference_fixtures},
      {3, "height bound", 30, height_bound},
      {4, "layer bound at 10^6", 120, layer_bound},
      {5, "queue equals candidate set", 30, candidate_invariant},
      {6, "counter bounds", 120, counter_bounds},
      {7, "cut/link inverse", 30, cut_link_inverse},
  };
  int failed = 0;
  for (const Criterion& k : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = k.run();
    } catch (const std::exception& e) {
      o = Outcome{false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (secs > k.limit_s) {
      o.pass = false;
      o.note += "; over the " + std::to_string(static_cast<int>(k.limit_s)) + " s budget";
    }
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", k.id, k.name, o.note.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
