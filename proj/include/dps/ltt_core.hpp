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
#include <vector>

#include "dps/core_tt.hpp"

namespace dps {
namespace ltt {

// Builds the layer-0 tree over `elements` and, recursively, one team tree
// per principal path with at least one internal node. Returns the root.
NodeId build(Forest& f, std::span<const Element> elements);

// Wires team trees below an already built plain tree whose root sits in
// `f[root].layer`.
void attach_teams(Forest& f, NodeId root);

// Topmost internal node of the principal path through `u`; nil if the path
// has no internal node.
NodeId path_head(const Forest& f, NodeId u);

// Subordinate keys of the principal path through `u`, topmost first,
// recomputed from the tree itself. Throws kPathTooShort for one-leaf paths.
std::vector<Key> team_of(const Forest& f, NodeId u);

// Keys stored in the team tree of the path through `u`, in leaf order.
std::vector<Key> stored_team(const Forest& f, NodeId u);

// Root of the team tree below the path through `u`, nil for one-leaf paths.
NodeId team_root(const Forest& f, NodeId u);

// Roots of every tree reachable from `root`, grouped by layer offset.
std::vector<std::vector<NodeId>> trees_by_layer(const Forest& f, NodeId root);

// Smallest i with log_base applied i times to n giving at most 1. Decided by
// comparing n with the tower base^base^...^1, which avoids drifting at exact
// tower values. Throws kBadBase for base <= 1 or when the tower converges
// below n.
int iterated_log(double base, double n);

// Number of layers below the root tree.
int layer_number(const Forest& f, NodeId root);

// Element count followed by the largest team per layer.
std::vector<std::uint64_t> team_size_maxima(const Forest& f, NodeId root);

// Every tree is checked as a plain tournament tree, plus: down/upp are
// mutual inverses, each team tree holds exactly its path's subordinate keys
// in top-down order, layers increase by one, and team sizes respect the
// logarithmic chain.
ValidationReport validate(const Forest& f, NodeId root);

// Releases the tree and every team tree below it.
void destroy(Forest& f, NodeId root);

}  // namespace ltt
}  // namespace dps
