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
#include <span>
#include <string>
#include <vector>

#include "dps/forest.hpp"
#include "dps/types.hpp"

namespace dps {

struct TournamentTree {
  NodeId root;
  std::size_t leaf_count = 0;

  bool empty() const { return root.is_nil(); }
};

struct Violation {
  NodeId node;
  std::string rule;
  std::string detail;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  void add(NodeId node, std::string rule, std::string detail);
  void merge(ValidationReport other);
};

inline constexpr double kGoldenRatio = 1.6180339887498948482;

double log_golden(double x);

// Least leaf count of a balanced full tree of height h: 1, 2, f(h-1)+f(h-2).
std::uint64_t min_leaves_for_height(int height);

// Exact test of phi^height <= n, i.e. height <= log_phi(n), using
// phi^h = (L_h + F_h * sqrt 5) / 2 with Lucas and Fibonacci numbers.
bool golden_power_at_most(int height, std::uint64_t n);

// ceil(log_phi(n)) for n >= 1, exact.
int ceil_log_golden(std::uint64_t n);

namespace tt {

// Perfectly balanced by recursive halving; the left half gets ceil(n/2).
TournamentTree build(Forest& f, std::span<const Element> elements, std::int32_t layer = 0);
TournamentTree build(Forest& f, std::span<const Value> values);
// Same shape over raw keys, used for team trees.
NodeId build_keys(Forest& f, std::span<const Key> keys, std::int32_t layer);

NodeId subordinate(const Forest& f, NodeId u);
// Child of u continuing u's principal path; nil for leaves.
NodeId path_child(const Forest& f, NodeId u);
NodeId principal_path_origin(const Forest& f, NodeId u);

// Plain rotations. `u` moves into its parent's position; both touched nodes
// are re-pulled. Returns u.
NodeId rotate_left(Forest& f, NodeId u);
NodeId rotate_right(Forest& f, NodeId u);

std::vector<NodeId> leaves(const Forest& f, NodeId root);
std::vector<Element> elements(const Forest& f, NodeId root);
std::size_t count_leaves(const Forest& f, NodeId root);

// Releases every node of the subtree (plain trees only; no team trees).
void destroy(Forest& f, NodeId root);

// Structural rules shared by both engines: fullness, balance, heights,
// min-of-children, origin pointers, parent links, leaf count, height bound,
// and the principal-path partition.
ValidationReport validate(const Forest& f, const TournamentTree& t);
ValidationReport validate(const Forest& f, NodeId root);

}  // namespace tt
}  // namespace dps
