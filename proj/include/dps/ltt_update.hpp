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

#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dps/engine.hpp"
#include "dps/ltt_core.hpp"
#include "dps/ltt_query.hpp"

namespace dps {
namespace ltt {

// Recomputes keys, heights and team trees from internal node `u` up to its
// root. Children of every node on that walk must already be valid; the
// team tree holding down(x) for each walked x must read [path above x,
// down(x), old continuation below x].
void expose(Forest& f, NodeId u);

// Sets a leaf's key (value and tiebreak) and repairs everything above it.
void changeval(Forest& f, NodeId leaf, const Key& key);

// Rotations that keep team trees consistent. `u` moves into its parent's
// position.
void rotate_left(Forest& f, NodeId u);
void rotate_right(Forest& f, NodeId u);

// Concatenation; either side may be nil. Returns the new root.
NodeId link(Forest& f, NodeId left, NodeId right);

// Splits after `leaf`: first holds head..leaf, second the rest (maybe nil).
std::pair<NodeId, NodeId> cut(Forest& f, NodeId leaf);

// Nodes reachable from `v` through parent and down pointers (v included).
std::unordered_set<NodeId> pd_closure_bruteforce(const Forest& f, NodeId v);

}  // namespace ltt

class LttEngine final : public Engine {
 public:
  EngineKind kind() const override { return EngineKind::kLtt; }
  ListId create(std::span<const Element> elements) override;
  std::vector<Element> psort(ListId list, std::size_t k) override;
  void changeval(ListId list, ElementId elem, Value value) override;
  ListId link(ListId a, ListId b) override;
  std::pair<ListId, ListId> cut(ListId list, ElementId elem) override;
  std::vector<Element> sequence(ListId list) const override;
  std::size_t size(ListId list) const override;
  ValidationReport validate(ListId list) const override;
  Metrics& metrics() override { return forest_.metrics; }

  NodeId root(ListId list) const;
  NodeId leaf_of(ElementId elem) const;
  ltt::PsortIterator iterator(ListId list);
  Forest& forest() { return forest_; }
  const Forest& forest() const { return forest_; }

 private:
  ListId add(NodeId root);
  NodeId resolve(ListId list, ElementId elem);

  Forest forest_;
  std::unordered_map<ListId, NodeId> roots_;
  std::unordered_map<ElementId, NodeId> index_;
  std::uint64_t next_list_ = 1;
};

}  // namespace dps
