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

#include "dps/tt_dynamic.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace dps {
namespace tt {
namespace {

// Walks from `y` to the root restoring heights, keys and balance. Returns the
// root. A spliced subtree of height h+1 next to one of height h-1 is repaired
// by a single or double rotation, after which heights above are unchanged.
NodeId rebalance_to_root(Forest& f, NodeId y) {
  NodeId top = y;
  while (!y.is_nil()) {
    ++f.metrics.nodes_visited;
    const int lh = f.height(f.left(y));
    const int rh = f.height(f.right(y));
    if (rh > lh + 1) {
      NodeId c = f.right(y);
      if (f.height(f.left(c)) > f.height(f.right(c))) rotate_right(f, f.left(c));
      y = rotate_left(f, f.right(y));
    } else if (lh > rh + 1) {
      NodeId c = f.left(y);
      if (f.height(f.right(c)) > f.height(f.left(c))) rotate_left(f, f.right(c));
      y = rotate_right(f, f.left(y));
    } else {
      f.pull(y);
    }
    top = y;
    y = f.parent(y);
  }
  return top;
}

}  // namespace

std::vector<Element> psort(Forest& f, NodeId root, std::size_t k) {
  if (root.is_nil()) throw Error(ErrorCode::kEmptyTree, "psort on an empty tree");
  using Entry = std::pair<Key, NodeId>;
  auto greater = [&f](const Entry& a, const Entry& b) {
    ++f.metrics.comparisons;
    return a.first > b.first;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(greater)> queue(greater);

  std::vector<Element> out;
  NodeId u = root;
  while (out.size() < k) {
    while (!f.is_leaf(u)) {
      ++f.metrics.nodes_visited;
      NodeId s = subordinate(f, u);
      queue.emplace(f.key(s), s);
      ++f.metrics.pq_inserts;
      u = path_child(f, u);
    }
    ++f.metrics.nodes_visited;
    out.push_back(element_of(f.key(u)));
    if (out.size() == k || queue.empty()) break;
    u = queue.top().second;
    queue.pop();
    ++f.metrics.pq_deletes;
  }
  return out;
}

void changeval(Forest& f, NodeId leaf, Value value) {
  f[leaf].key.value = value;
  ++f.metrics.nodes_visited;
  for (NodeId v = f.parent(leaf); !v.is_nil(); v = f.parent(v)) {
    ++f.metrics.nodes_visited;
    f.pull(v);
  }
}

NodeId link(Forest& f, NodeId left, NodeId right) {
  if (left.is_nil()) return right;
  if (right.is_nil()) return left;
  const int hl = f.height(left);
  const int hr = f.height(right);
  if (hl > hr + 1) {
    NodeId x = left;
    while (f.height(x) > hr + 1) {
      ++f.metrics.nodes_visited;
      x = f.right(x);
    }
    NodeId p = f.parent(x);
    NodeId v = f.make_internal(x, right);
    f.replace_child(p, x, v);
    return rebalance_to_root(f, p);
  }
  if (hr > hl + 1) {
    NodeId x = right;
    while (f.height(x) > hl + 1) {
      ++f.metrics.nodes_visited;
      x = f.left(x);
    }
    NodeId p = f.parent(x);
    NodeId v = f.make_internal(left, x);
    f.replace_child(p, x, v);
    return rebalance_to_root(f, p);
  }
  return f.make_internal(left, right);
}

std::pair<NodeId, NodeId> cut(Forest& f, NodeId leaf, CutTrace* trace) {
  NodeId first = leaf;
  NodeId second = kNil;
  NodeId y = leaf;
  NodeId x = f.parent(leaf);
  f[leaf].parent = kNil;
  while (!x.is_nil()) {
    ++f.metrics.nodes_visited;
    NodeId next = f.parent(x);
    if (f.left(x) == y) {
      NodeId s = f.right(x);
      f[s].parent = kNil;
      if (trace) trace->detached_heights.push_back(f.height(s));
      second = link(f, second, s);
    } else {
      NodeId s = f.left(x);
      f[s].parent = kNil;
      if (trace) trace->detached_heights.push_back(f.height(s));
      first = link(f, s, first);
    }
    f.release(x);
    y = x;
    x = next;
  }
  return {first, second};
}

}  // namespace tt

ListId TtEngine::add(NodeId root) {
  ListId id{next_list_++};
  roots_.emplace(id, root);
  return id;
}

NodeId TtEngine::root(ListId list) const {
  auto it = roots_.find(list);
  if (it == roots_.end()) throw Error(ErrorCode::kUnknownList, "no list " + std::to_string(list.value));
  return it->second;
}

TournamentTree TtEngine::tree(ListId list) const {
  NodeId r = root(list);
  return TournamentTree{r, tt::count_leaves(forest_, r)};
}

NodeId TtEngine::leaf_of(ElementId elem) const {
  auto it = index_.find(elem);
  if (it == index_.end()) throw Error(ErrorCode::kUnknownElement, "no element " + std::to_string(elem));
  return it->second;
}

NodeId TtEngine::resolve(ListId list, ElementId elem) {
  NodeId leaf = leaf_of(elem);
  if (forest_.find_root(leaf) != root(list)) {
    throw Error(ErrorCode::kUnknownElement, "element " + std::to_string(elem) + " is not in the list");
  }
  return leaf;
}

ListId TtEngine::create(std::span<const Element> elements) {
  TournamentTree t = tt::build(forest_, elements);
  for (NodeId leaf : tt::leaves(forest_, t.root)) index_[forest_.key(leaf).tiebreak] = leaf;
  return add(t.root);
}

std::vector<Element> TtEngine::psort(ListId list, std::size_t k) {
  NodeId r = root(list);
  if (r.is_nil()) throw Error(ErrorCode::kEmptyList, "psort on an empty list");
  return tt::psort(forest_, r, k);
}

void TtEngine::changeval(ListId list, ElementId elem, Value value) {
  require_user_value(value);
  tt::changeval(forest_, resolve(list, elem), value);
}

ListId TtEngine::link(ListId a, ListId b) {
  NodeId ra = root(a);
  NodeId rb = root(b);
  if (a == b) throw Error(ErrorCode::kUnknownList, "cannot link a list to itself");
  roots_.erase(a);
  roots_.erase(b);
  return add(tt::link(forest_, ra, rb));
}

std::pair<ListId, ListId> TtEngine::cut(ListId list, ElementId elem) {
  NodeId leaf = resolve(list, elem);
  roots_.erase(list);
  last_cut_ = {};
  auto [first, second] = tt::cut(forest_, leaf, &last_cut_);
  ListId a = add(first);
  ListId b = add(second);
  return {a, b};
}

std::vector<Element> TtEngine::sequence(ListId list) const { return tt::elements(forest_, root(list)); }

std::size_t TtEngine::size(ListId list) const { return tree(list).leaf_count; }

ValidationReport TtEngine::validate(ListId list) const { return tt::validate(forest_, tree(list)); }

}  // namespace dps
