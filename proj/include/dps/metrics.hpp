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
#include <vector>

namespace dps {

// Instrumentation counters. Compiled in unconditionally; callers reset
// between measured operations.
struct Metrics {
  std::uint64_t comparisons = 0;
  std::uint64_t pq_inserts = 0;
  std::uint64_t pq_deletes = 0;
  std::uint64_t nodes_visited = 0;
  std::uint64_t rotations = 0;
  // Iterations of the outermost expose walk only; nested walks on team
  // trees show up in nodes_visited.
  std::uint64_t expose_iterations = 0;
  // Largest team per layer, filled in by layered-structure measurements.
  std::vector<std::uint64_t> team_size_max;
  std::uint64_t wall_time_ns = 0;

  void reset() { *this = Metrics{}; }

  std::uint64_t queue_ops() const { return pq_inserts + pq_deletes; }
};

}  // namespace dps
