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

#include "dps/ltt_update.hpp"

#include <algorithm>

namespace dps {
namespace ltt {
namespace {

struct ExposeScope {
  Forest& f;
  bool outermost;
  explicit ExposeScope(Forest& forest) : f(forest), outermost(forest.expose_depth == 0) { ++f.expose_depth; }
  ~ExposeScope() { --f.expose_depth; }
};

// New internal node over two team-consistent trees, with a one-leaf team
// tree of its own. Keys are settled by the caller's expose.
NodeId join_node(Forest& f, NodeId left, NodeId right) {
  const std::int32_t below = f[left].layer + 1;
  NodeId d = f.make_leaf(std::max(f.key(left), f.key(right)), below);
  NodeId v = f.make_internal(left, right);
  f[v].down = d;
  f[d].upp = v;
  return v;
}

// Detaches internal node `x` from the team tree of the path above it, so
// that x heads its own team tree. No-op if x already does.
void separate_from_above(Forest& f, NodeId x) {
  NodeId p = f.parent(x);
  if (p.is_nil() || f.is_leaf(x) || f.key(p) != f.key(x)) return;
  cut(f, f[p].down);
}

// Walks from `y` to the root and repairs the first imbalance met with a
// single or double rotation, continuing upward after each repair.
NodeId rebalance_to_root(Forest& f, NodeId y) {
  NodeId top = y;
  while (!y.is_nil()) {
    ++f.metrics.nodes_visited;
    const int lh = f.height(f.left(y));
    const int rh = f.height(f.right(y));
    if (rh > lh + 1) {
      NodeId c = f.right(y);
      if (f.height(f.left(c)) > f.height(f.right(c))) rotate_right(f, f.left(c));
      y = f.right(y);
      rotate_left(f, y);
    } else if (lh > rh + 1) {
      NodeId c = f.left(y);
      if (f.height(f.right(c)) > f.height(f.left(c))) rotate_left(f, f.right(c));
      y = f.left(y);
      rotate_right(f, y);
    }
    top = y;
    y = f.parent(y);
  }
  return top;
}

}  // namespace

void expose(Forest& f, NodeId u) {
  if (u.is_nil() || f.is_leaf(u)) throw Error(ErrorCode::kNotInternal, "expose needs an internal node");
  ExposeScope scope(f);
  for (NodeId x = u; !x.is_nil(); x = f.parent(x)) {
    ++f.metrics.nodes_visited;
    if (scope.outermost) ++f.metrics.expose_iterations;
    NodeId l = f.left(x);
    NodeId r = f.right(x);
    f.pull(x);
    const bool left_wins = f.key(x) == f.key(l);
    NodeId z = left_wins ? l : r;
    NodeId loser = left_wins ? r : l;

    // Rebuild x's team tree as [path above x, down(x), team below z]. The
    // part cut off below down(x) stays with whichever child it belonged to.
    NodeId d = f[x].down;
    NodeId above = cut(f, d).first;
    NodeId below = f.is_leaf(z) ? kNil : f.root_of(f[z].down);
    link(f, above, below);
    changeval(f, d, f.key(loser));
  }
}

void changeval(Forest& f, NodeId leaf, const Key& key) {
  f[leaf].key = key;
  ++f.metrics.nodes_visited;
  NodeId p = f.parent(leaf);
  if (!p.is_nil()) expose(f, p);
}

void rotate_left(Forest& f, NodeId u) {
  NodeId y = f.parent(u);
  if (f.is_leaf(u)) throw Error(ErrorCode::kNotInternal, "rotate_left needs an internal node");
  if (y.is_nil()) throw Error(ErrorCode::kNoParent, "rotate_left on a root");
  if (f.right(y) != u) throw Error(ErrorCode::kNotRightChild, "rotate_left needs a right child");
  NodeId g = f.parent(y);
  if (!g.is_nil()) cut(f, f[g].down);
  cut(f, f[y].down);
  cut(f, f[u].down);
  tt::rotate_left(f, u);
  expose(f, y);
}

void rotate_right(Forest& f, NodeId u) {
  NodeId y = f.parent(u);
  if (f.is_leaf(u)) throw Error(ErrorCode::kNotInternal, "rotate_right needs an internal node");
  if (y.is_nil()) throw Error(ErrorCode::kNoParent, "rotate_right on a root");
  if (f.left(y) != u) throw Error(ErrorCode::kNotLeftChild, "rotate_right needs a left child");
  NodeId g = f.parent(y);
  if (!g.is_nil()) cut(f, f[g].down);
  cut(f, f[y].down);
  cut(f, f[u].down);
  tt::rotate_right(f, u);
  expose(f, y);
}

NodeId link(Forest& f, NodeId left, NodeId right) {
  if (left.is_nil()) return right;
  if (right.is_nil()) return left;
  const int hl = f.height(left);
  const int hr = f.height(right);
  if (hl > hr + 1 || hr > hl + 1) {
    const bool descend_left_tree = hl > hr;
    const int stop = std::min(hl, hr) + 1;
    NodeId x = descend_left_tree ? left : right;
    while (f.height(x) > stop) {
      ++f.metrics.nodes_visited;
      x = descend_left_tree ? f.right(x) : f.left(x);
    }
    separate_from_above(f, x);
    NodeId p = f.parent(x);
    f[x].parent = kNil;
    NodeId v = descend_left_tree ? join_node(f, x, right) : join_node(f, left, x);
    f.replace_child(p, x, v);
    expose(f, v);
    rebalance_to_root(f, p);
    return f.find_root(v);
  }
  NodeId v = join_node(f, left, right);
  expose(f, v);
  return v;
}

std::pair<NodeId, NodeId> cut(Forest& f, NodeId leaf) {
  const Key saved = f.key(leaf);
  NodeId x = f.parent(leaf);
  if (x.is_nil()) return {leaf, kNil};

  // Pull the leaf's path up to the root; its team tree then holds exactly
  // the nodes about to be dissolved.
  changeval(f, leaf, Key{kMinSentinel, saved.tiebreak});
  NodeId team = f.root_of(f[x].down);

  NodeId first = kNil;
  NodeId second = kNil;
  NodeId y = leaf;
  f[leaf].parent = kNil;
  while (!x.is_nil()) {
    ++f.metrics.nodes_visited;
    NodeId next = f.parent(x);
    if (f.left(x) == y) {
      NodeId s = f.right(x);
      f[s].parent = kNil;
      second = link(f, second, s);
    } else {
      NodeId s = f.left(x);
      f[s].parent = kNil;
      first = link(f, s, first);
    }
    f.release(x);
    y = x;
    x = next;
  }
  destroy(f, team);
  f[leaf].key = saved;
  first = link(f, first, leaf);
  return {first, second};
}

std::unordered_set<NodeId> pd_closure_bruteforce(const Forest& f, NodeId v) {
  std::unordered_set<NodeId> seen{v};
  std::vector<NodeId> stack{v};
  while (!stack.empty()) {
    NodeId w = stack.back();
    stack.pop_back();
    for (NodeId n : {f.parent(w), f[w].down}) {
      if (!n.is_nil() && seen.insert(n).second) stack.push_back(n);
    }
  }
  return seen;
}

}  // namespace ltt

ListId LttEngine::add(NodeId root) {
  ListId id{next_list_++};
  roots_.emplace(id, root);
  return id;
}

NodeId LttEngine::root(ListId list) const {
  auto it = roots_.find(list);
  if (it == roots_.end()) throw Error(ErrorCode::kUnknownList, "no list " + std::to_string(list.value));
  return it->second;
}

NodeId LttEngine::leaf_of(ElementId elem) const {
  auto it = index_.find(elem);
  if (it == index_.end()) throw Error(ErrorCode::kUnknownElement, "no element " + std::to_string(elem));
  return it->second;
}

NodeId LttEngine::resolve(ListId list, ElementId elem) {
  NodeId leaf = leaf_of(elem);
  if (forest_.find_root(leaf) != root(list)) {
    throw Error(ErrorCode::kUnknownElement, "element " + std::to_string(elem) + " is not in the list");
  }
  return leaf;
}

ListId LttEngine::create(std::span<const Element> elements) {
  NodeId r = ltt::build(forest_, elements);
  for (NodeId leaf : tt::leaves(forest_, r)) index_[forest_.key(leaf).tiebreak] = leaf;
  ++forest_.version;
  return add(r);
}

std::vector<Element> LttEngine::psort(ListId list, std::size_t k) {
  NodeId r = root(list);
  if (r.is_nil()) throw Error(ErrorCode::kEmptyList, "psort on an empty list");
  return ltt::psort(forest_, r, k);
}

ltt::PsortIterator LttEngine::iterator(ListId list) { return ltt::PsortIterator(forest_, root(list)); }

void LttEngine::changeval(ListId list, ElementId elem, Value value) {
  require_user_value(value);
  NodeId leaf = resolve(list, elem);
  ++forest_.version;
  ltt::changeval(forest_, leaf, Key{value, elem});
}

ListId LttEngine::link(ListId a, ListId b) {
  NodeId ra = root(a);
  NodeId rb = root(b);
  if (a == b) throw Error(ErrorCode::kUnknownList, "cannot link a list to itself");
  roots_.erase(a);
  roots_.erase(b);
  ++forest_.version;
  return add(ltt::link(forest_, ra, rb));
}

std::pair<ListId, ListId> LttEngine::cut(ListId list, ElementId elem) {
  NodeId leaf = resolve(list, elem);
  roots_.erase(list);
  ++forest_.version;
  auto [first, second] = ltt::cut(forest_, leaf);
  ListId a = add(first);
  ListId b = add(second);
  return {a, b};
}

std::vector<Element> LttEngine::sequence(ListId list) const { return tt::elements(forest_, root(list)); }

std::size_t LttEngine::size(ListId list) const {
  NodeId r = root(list);
  return r.is_nil() ? 0 : tt::count_leaves(forest_, r);
}

ValidationReport LttEngine::validate(ListId list) const { return ltt::validate(forest_, root(list)); }

}  // namespace dps
