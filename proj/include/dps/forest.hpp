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

#include "dps/metrics.hpp"
#include "dps/types.hpp"

namespace dps {

// One node of a tournament tree. Layer-0 leaves are list elements; their
// key's tiebreak is the element id. `down`/`upp` are only used by the
// layered structure.
struct Node {
  NodeId parent;
  NodeId left;
  NodeId right;
  // Leaf whose key this node carries (the origin of its principal path).
  NodeId origin;
  // Internal nodes: leaf one layer down carrying key(subordinate).
  NodeId down;
  // Leaves in layer >= 1: the internal node whose down is this leaf.
  NodeId upp;
  Key key;
  std::int32_t height = 0;
  std::int32_t layer = 0;

  bool is_leaf() const { return left.is_nil(); }
};

// Arena of nodes shared by every tree an engine owns. Handles stay valid
// until the node is released; released slots are recycled.
class Forest {
 public:
  NodeId make_leaf(Key key, std::int32_t layer = 0);
  // New internal node over two detached subtrees; key and height are pulled
  // from the children.
  NodeId make_internal(NodeId left, NodeId right);
  void release(NodeId n);

  Node& operator[](NodeId n) { return nodes_[n.value]; }
  const Node& operator[](NodeId n) const { return nodes_[n.value]; }

  bool is_leaf(NodeId n) const { return (*this)[n].is_leaf(); }
  NodeId parent(NodeId n) const { return (*this)[n].parent; }
  NodeId left(NodeId n) const { return (*this)[n].left; }
  NodeId right(NodeId n) const { return (*this)[n].right; }
  const Key& key(NodeId n) const { return (*this)[n].key; }
  std::int32_t height(NodeId n) const { return n.is_nil() ? -1 : (*this)[n].height; }

  NodeId sibling(NodeId n) const;
  // Counts the walk in metrics.nodes_visited.
  NodeId root_of(NodeId n);
  // Uncounted variant for bookkeeping and validation.
  NodeId find_root(NodeId n) const;
  // Recomputes height, key and origin of an internal node from its children.
  void pull(NodeId n);
  // Replaces `old_child` by `new_child` under `parent` (or makes it a root).
  void replace_child(NodeId parent, NodeId old_child, NodeId new_child);

  std::size_t live_nodes() const { return nodes_.size() - free_.size(); }

  Metrics metrics;
  // Bumped by every public update of a layered structure; iterators created
  // before a bump refuse to advance.
  std::uint64_t version = 0;
  // Nesting depth of expose walks, so only the outermost walk is counted.
  int expose_depth = 0;

 private:
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> free_;
};

}  // namespace dps
