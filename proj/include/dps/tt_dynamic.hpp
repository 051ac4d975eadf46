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
#include <utility>
#include <vector>

#include "dps/core_tt.hpp"
#include "dps/engine.hpp"

namespace dps {
namespace tt {

// The min(k, n) smallest elements in increasing (value, id) order. Read-only.
std::vector<Element> psort(Forest& f, NodeId root, std::size_t k);

// Sets the leaf's value and re-pulls every ancestor. Shape is unchanged.
void changeval(Forest& f, NodeId leaf, Value value);

// Concatenates two trees (either may be nil) and returns the new root.
NodeId link(Forest& f, NodeId left, NodeId right);

struct CutTrace {
  // Heights of the detached subtrees, nearest the leaf first.
  std::vector<int> detached_heights;
};

// Splits after `leaf`: first holds head..leaf, second the rest (maybe nil).
std::pair<NodeId, NodeId> cut(Forest& f, NodeId leaf, CutTrace* trace = nullptr);

}  // namespace tt

class TtEngine final : public Engine {
 public:
  EngineKind kind() const override { return EngineKind::kTt; }
  ListId create(std::span<const Element> elements) override;
  std::vector<Element> psort(ListId list, std::size_t k) override;
  void changeval(ListId list, ElementId elem, Value value) override;
  ListId link(ListId a, ListId b) override;
  std::pair<ListId, ListId> cut(ListId list, ElementId elem) override;
  std::vector<Element> sequence(ListId list) const override;
  std::size_t size(ListId list) const override;
  ValidationReport validate(ListId list) const override;
  Metrics& metrics() override { return forest_.metrics; }

  TournamentTree tree(ListId list) const;
  NodeId leaf_of(ElementId elem) const;
  Forest& forest() { return forest_; }
  const Forest& forest() const { return forest_; }
  const tt::CutTrace& last_cut() const { return last_cut_; }

 private:
  ListId add(NodeId root);
  NodeId root(ListId list) const;
  NodeId resolve(ListId list, ElementId elem);

  Forest forest_;
  std::unordered_map<ListId, NodeId> roots_;
  std::unordered_map<ElementId, NodeId> index_;
  std::uint64_t next_list_ = 1;
  tt::CutTrace last_cut_;
};

}  // namespace dps
