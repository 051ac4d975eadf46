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

#include "dps/core_tt.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_set>

namespace dps {

void ValidationReport::add(NodeId node, std::string rule, std::string detail) {
  ok = false;
  violations.push_back(Violation{node, std::move(rule), std::move(detail)});
}

void ValidationReport::merge(ValidationReport other) {
  if (other.ok) return;
  ok = false;
  for (auto& v : other.violations) violations.push_back(std::move(v));
}

double log_golden(double x) { return std::log(x) / std::log(kGoldenRatio); }

std::uint64_t min_leaves_for_height(int height) {
  std::uint64_t a = 1;  // f(0)
  std::uint64_t b = 2;  // f(1)
  if (height <= 0) return a;
  for (int h = 2; h <= height; ++h) {
    std::uint64_t c = a + b;
    a = b;
    b = c;
  }
  return b;
}

__extension__ typedef unsigned __int128 Wide;

bool golden_power_at_most(int height, std::uint64_t n) {
  if (height < 0) return true;
  if (n == 0) return false;
  // phi^90 exceeds 2^62, so such heights never fit below the clamp.
  constexpr std::uint64_t kClamp = std::uint64_t{1} << 62;
  if (n >= kClamp) return height < 90;
  if (height >= 90) return false;
  // Lucas L_h and Fibonacci F_h.
  Wide fib = 0;
  Wide fib_next = 1;
  Wide lucas = 2;
  Wide lucas_next = 1;
  for (int i = 0; i < height; ++i) {
    auto f2 = fib + fib_next;
    fib = fib_next;
    fib_next = f2;
    auto l2 = lucas + lucas_next;
    lucas = lucas_next;
    lucas_next = l2;
  }
  const Wide twice_n = static_cast<Wide>(n) * 2;
  if (twice_n < lucas) return false;
  const Wide rhs = twice_n - lucas;
  return 5 * fib * fib <= rhs * rhs;
}

int ceil_log_golden(std::uint64_t n) {
  if (n <= 1) return 0;
  int c = 1;
  // phi^c is irrational for c >= 1, so "not <= n" means "> n".
  while (golden_power_at_most(c, n)) ++c;
  return c;
}

namespace tt {
namespace {

NodeId build_range(Forest& f, std::span<const Key> keys, std::int32_t layer) {
  if (keys.size() == 1) return f.make_leaf(keys[0], layer);
  const std::size_t left_size = (keys.size() + 1) / 2;
  NodeId l = build_range(f, keys.subspan(0, left_size), layer);
  NodeId r = build_range(f, keys.subspan(left_size), layer);
  return f.make_internal(l, r);
}

std::string describe(const Key& k) {
  std::ostringstream os;
  os << "(" << k.value << "," << k.tiebreak << ")";
  return os.str();
}

struct Checker {
  const Forest& f;
  ValidationReport report;
  std::size_t leaves = 0;
  std::set<Key> leaf_keys;
  std::int32_t layer = 0;

  void visit(NodeId v) {
    const Node& n = f[v];
    if (n.layer != layer) report.add(v, "layer", "node layer differs from its tree");
    const bool has_l = !n.left.is_nil();
    const bool has_r = !n.right.is_nil();
    if (has_l != has_r) {
      report.add(v, "full", "internal node with a single child");
      return;
    }
    if (!has_l) {
      ++leaves;
      if (n.height != 0) report.add(v, "height", "leaf height is not 0");
      if (n.origin != v) report.add(v, "origin", "leaf origin is not itself");
      if (!leaf_keys.insert(n.key).second) report.add(v, "distinct-keys", "duplicate key " + describe(n.key));
      return;
    }
    for (NodeId c : {n.left, n.right}) {
      if (f[c].parent != v) report.add(c, "parent-link", "child does not point back to parent");
      visit(c);
    }
    const Node& l = f[n.left];
    const Node& r = f[n.right];
    if (n.height != 1 + std::max(l.height, r.height)) report.add(v, "height", "stored height is stale");
    if (std::abs(l.height - r.height) > 1) report.add(v, "balance", "children heights differ by more than 1");
    const Node& m = l.key < r.key ? l : r;
    if (n.key != m.key) {
      report.add(v, "min-of-children", describe(n.key) + " != min " + describe(m.key));
    } else if (n.origin != m.origin) {
      report.add(v, "origin", "origin does not follow the smaller child");
    }
    const int continuing = (l.key == n.key) + (r.key == n.key);
    if (continuing != 1) report.add(v, "principal-path", "node does not continue exactly one principal path");
  }
};

}  // namespace

NodeId build_keys(Forest& f, std::span<const Key> keys, std::int32_t layer) {
  if (keys.empty()) throw Error(ErrorCode::kEmptyInput, "cannot build a tree of no keys");
  return build_range(f, keys, layer);
}

TournamentTree build(Forest& f, std::span<const Element> elements, std::int32_t layer) {
  if (elements.empty()) throw Error(ErrorCode::kEmptyInput, "cannot build a tree of an empty list");
  std::vector<Key> keys;
  keys.reserve(elements.size());
  for (const Element& e : elements) {
    require_user_value(e.value);
    keys.push_back(key_of(e));
  }
  return TournamentTree{build_range(f, keys, layer), elements.size()};
}

TournamentTree build(Forest& f, std::span<const Value> values) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "cannot build a tree of an empty list");
  std::vector<Element> elems;
  elems.reserve(values.size());
  for (Value v : values) {
    require_user_value(v);
    elems.push_back(Element{next_element_id(), v});
  }
  return build(f, elems);
}

NodeId subordinate(const Forest& f, NodeId u) {
  if (f.is_leaf(u)) throw Error(ErrorCode::kNotInternal, "leaves have no subordinate");
  NodeId l = f.left(u);
  return f.key(l) == f.key(u) ? f.right(u) : l;
}

NodeId path_child(const Forest& f, NodeId u) {
  if (f.is_leaf(u)) return kNil;
  NodeId l = f.left(u);
  return f.key(l) == f.key(u) ? l : f.right(u);
}

NodeId principal_path_origin(const Forest& f, NodeId u) {
  while (!f.is_leaf(u)) u = path_child(f, u);
  return u;
}

NodeId rotate_left(Forest& f, NodeId u) {
  NodeId y = f.parent(u);
  if (f.is_leaf(u)) throw Error(ErrorCode::kNotInternal, "rotate_left needs an internal node");
  if (y.is_nil()) throw Error(ErrorCode::kNoParent, "rotate_left on a root");
  if (f.right(y) != u) throw Error(ErrorCode::kNotRightChild, "rotate_left needs a right child");
  NodeId g = f.parent(y);
  NodeId b = f.left(u);
  f[y].right = b;
  f[b].parent = y;
  f[u].left = y;
  f[y].parent = u;
  f.replace_child(g, y, u);
  f.pull(y);
  f.pull(u);
  ++f.metrics.rotations;
  return u;
}

NodeId rotate_right(Forest& f, NodeId u) {
  NodeId y = f.parent(u);
  if (f.is_leaf(u)) throw Error(ErrorCode::kNotInternal, "rotate_right needs an internal node");
  if (y.is_nil()) throw Error(ErrorCode::kNoParent, "rotate_right on a root");
  if (f.left(y) != u) throw Error(ErrorCode::kNotLeftChild, "rotate_right needs a left child");
  NodeId g = f.parent(y);
  NodeId b = f.right(u);
  f[y].left = b;
  f[b].parent = y;
  f[u].right = y;
  f[y].parent = u;
  f.replace_child(g, y, u);
  f.pull(y);
  f.pull(u);
  ++f.metrics.rotations;
  return u;
}

std::vector<NodeId> leaves(const Forest& f, NodeId root) {
  std::vector<NodeId> out;
  if (root.is_nil()) return out;
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    if (f.is_leaf(v)) {
      out.push_back(v);
    } else {
      stack.push_back(f.right(v));
      stack.push_back(f.left(v));
    }
  }
  return out;
}

std::vector<Element> elements(const Forest& f, NodeId root) {
  std::vector<Element> out;
  for (NodeId l : leaves(f, root)) out.push_back(element_of(f.key(l)));
  return out;
}

std::size_t count_leaves(const Forest& f, NodeId root) { return leaves(f, root).size(); }

void destroy(Forest& f, NodeId root) {
  if (root.is_nil()) return;
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    if (!f.is_leaf(v)) {
      stack.push_back(f.left(v));
      stack.push_back(f.right(v));
    }
    f.release(v);
  }
}

ValidationReport validate(const Forest& f, NodeId root) {
  if (root.is_nil()) return {};
  Checker c{f, {}, 0, {}, f[root].layer};
  if (!f.parent(root).is_nil()) c.report.add(root, "root-parent", "root has a parent");
  c.visit(root);
  if (!golden_power_at_most(f[root].height, c.leaves)) {
    c.report.add(root, "height-bound",
                 "height " + std::to_string(f[root].height) + " exceeds log_phi(" + std::to_string(c.leaves) + ")");
  }
  if (static_cast<std::uint64_t>(c.leaves) < min_leaves_for_height(f[root].height)) {
    c.report.add(root, "min-leaves", "fewer leaves than f(height)");
  }
  return c.report;
}

ValidationReport validate(const Forest& f, const TournamentTree& t) {
  ValidationReport r = validate(f, t.root);
  const std::size_t actual = t.root.is_nil() ? 0 : count_leaves(f, t.root);
  if (actual != t.leaf_count) {
    r.add(t.root, "leaf-count",
          "recorded " + std::to_string(t.leaf_count) + ", found " + std::to_string(actual));
  }
  return r;
}

}  // namespace tt
}  // namespace dps
