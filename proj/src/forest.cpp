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

#include "dps/forest.hpp"

#include <cassert>

namespace dps {

NodeId Forest::make_leaf(Key key, std::int32_t layer) {
  NodeId id;
  if (!free_.empty()) {
    id.value = free_.back();
    free_.pop_back();
  } else {
    id.value = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();
  }
  Node& n = nodes_[id.value];
  n = Node{};
  n.key = key;
  n.origin = id;
  n.layer = layer;
  return id;
}

NodeId Forest::make_internal(NodeId left, NodeId right) {
  NodeId id = make_leaf(Key{}, (*this)[left].layer);
  Node& n = (*this)[id];
  n.left = left;
  n.right = right;
  (*this)[left].parent = id;
  (*this)[right].parent = id;
  pull(id);
  return id;
}

void Forest::release(NodeId n) {
  assert(!n.is_nil());
  nodes_[n.value] = Node{};
  free_.push_back(n.value);
}

NodeId Forest::sibling(NodeId n) const {
  NodeId p = parent(n);
  if (p.is_nil()) return kNil;
  return left(p) == n ? right(p) : left(p);
}

NodeId Forest::root_of(NodeId n) {
  while (!parent(n).is_nil()) {
    ++metrics.nodes_visited;
    n = parent(n);
  }
  return n;
}

NodeId Forest::find_root(NodeId n) const {
  while (!parent(n).is_nil()) n = parent(n);
  return n;
}

void Forest::pull(NodeId n) {
  Node& v = (*this)[n];
  const Node& l = (*this)[v.left];
  const Node& r = (*this)[v.right];
  ++metrics.comparisons;
  const Node& m = l.key < r.key ? l : r;
  v.key = m.key;
  v.origin = m.origin;
  v.height = 1 + std::max(l.height, r.height);
}

void Forest::replace_child(NodeId parent, NodeId old_child, NodeId new_child) {
  if (!new_child.is_nil()) (*this)[new_child].parent = parent;
  if (parent.is_nil()) return;
  Node& p = (*this)[parent];
  if (p.left == old_child) {
    p.left = new_child;
  } else {
    assert(p.right == old_child);
    p.right = new_child;
  }
}

}  // namespace dps
