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

#include "dps/ltt_core.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace dps {
namespace ltt {
namespace {

std::string describe(const Key& k) { return "(" + std::to_string(k.value) + "," + std::to_string(k.tiebreak) + ")"; }

// Internal nodes that start a principal path: the root, and every internal
// node whose parent continues into its sibling.
std::vector<NodeId> path_heads(const Forest& f, NodeId root) {
  std::vector<NodeId> heads;
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    if (f.is_leaf(v)) continue;
    NodeId p = f.parent(v);
    if (p.is_nil() || f.key(p) != f.key(v)) heads.push_back(v);
    stack.push_back(f.right(v));
    stack.push_back(f.left(v));
  }
  return heads;
}

std::vector<NodeId> path_internals(const Forest& f, NodeId head) {
  std::vector<NodeId> out;
  for (NodeId w = head; !w.is_nil() && !f.is_leaf(w); w = tt::path_child(f, w)) out.push_back(w);
  return out;
}

std::vector<NodeId> all_nodes(const Forest& f, NodeId root) {
  std::vector<NodeId> out;
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    out.push_back(v);
    if (!f.is_leaf(v)) {
      stack.push_back(f.left(v));
      stack.push_back(f.right(v));
    }
  }
  return out;
}

}  // namespace

void attach_teams(Forest& f, NodeId root) {
  std::vector<NodeId> work{root};
  while (!work.empty()) {
    NodeId r = work.back();
    work.pop_back();
    const std::int32_t layer = f[r].layer + 1;
    for (NodeId head : path_heads(f, r)) {
      std::vector<NodeId> path = path_internals(f, head);
      std::vector<Key> keys;
      keys.reserve(path.size());
      for (NodeId w : path) keys.push_back(f.key(tt::subordinate(f, w)));
      NodeId team = tt::build_keys(f, keys, layer);
      std::vector<NodeId> slots = tt::leaves(f, team);
      for (std::size_t i = 0; i < path.size(); ++i) {
        f[path[i]].down = slots[i];
        f[slots[i]].upp = path[i];
      }
      work.push_back(team);
    }
  }
}

NodeId build(Forest& f, std::span<const Element> elements) {
  NodeId root = tt::build(f, elements).root;
  attach_teams(f, root);
  return root;
}

NodeId path_head(const Forest& f, NodeId u) {
  NodeId w = u;
  while (!f.parent(w).is_nil() && f.key(f.parent(w)) == f.key(u)) w = f.parent(w);
  return f.is_leaf(w) ? kNil : w;
}

std::vector<Key> team_of(const Forest& f, NodeId u) {
  NodeId head = path_head(f, u);
  if (head.is_nil()) throw Error(ErrorCode::kPathTooShort, "principal path has no internal node");
  std::vector<Key> keys;
  for (NodeId w : path_internals(f, head)) keys.push_back(f.key(tt::subordinate(f, w)));
  return keys;
}

NodeId team_root(const Forest& f, NodeId u) {
  NodeId head = path_head(f, u);
  return head.is_nil() ? kNil : f.find_root(f[head].down);
}

std::vector<Key> stored_team(const Forest& f, NodeId u) {
  NodeId r = team_root(f, u);
  if (r.is_nil()) throw Error(ErrorCode::kPathTooShort, "principal path has no internal node");
  std::vector<Key> keys;
  for (NodeId leaf : tt::leaves(f, r)) keys.push_back(f.key(leaf));
  return keys;
}

std::vector<std::vector<NodeId>> trees_by_layer(const Forest& f, NodeId root) {
  std::vector<std::vector<NodeId>> layers;
  if (root.is_nil()) return layers;
  layers.push_back({root});
  while (true) {
    std::vector<NodeId> next;
    for (NodeId r : layers.back()) {
      for (NodeId head : path_heads(f, r)) next.push_back(f.find_root(f[head].down));
    }
    if (next.empty()) break;
    layers.push_back(std::move(next));
  }
  return layers;
}

int iterated_log(double base, double n) {
  if (!(base > 1.0)) throw Error(ErrorCode::kBadBase, "iterated logarithm needs a base above 1");
  constexpr long double kSlack = 1e-12L;
  const long double target = n;
  long double tower = 1.0L;
  for (int i = 0;; ++i) {
    if (target <= tower * (1.0L + kSlack)) return i;
    const long double next = std::pow(static_cast<long double>(base), tower);
    if (next <= tower * (1.0L + kSlack)) {
      throw Error(ErrorCode::kBadBase, "tower of this base stays below the argument");
    }
    tower = next;
  }
}

int layer_number(const Forest& f, NodeId root) {
  return static_cast<int>(trees_by_layer(f, root).size()) - 1;
}

std::vector<std::uint64_t> team_size_maxima(const Forest& f, NodeId root) {
  std::vector<std::uint64_t> out;
  for (const auto& layer : trees_by_layer(f, root)) {
    std::uint64_t best = 0;
    for (NodeId r : layer) best = std::max<std::uint64_t>(best, tt::count_leaves(f, r));
    out.push_back(best);
  }
  return out;
}

ValidationReport validate(const Forest& f, NodeId root) {
  ValidationReport report;
  if (root.is_nil()) return report;

  struct Pending {
    NodeId root;
    std::uint64_t parent_size;
  };
  std::unordered_set<NodeId> seen_trees{root};
  std::vector<Pending> level{{root, 0}};
  std::vector<std::uint64_t> maxima;
  const std::int32_t base_layer = f[root].layer;

  for (int depth = 0; !level.empty(); ++depth) {
    std::vector<Pending> next;
    std::uint64_t best = 0;
    for (const Pending& t : level) {
      ValidationReport plain = tt::validate(f, t.root);
      const bool shape_ok = plain.ok;
      report.merge(std::move(plain));
      if (f[t.root].layer != base_layer + depth) report.add(t.root, "layer", "tree sits on the wrong layer");
      const std::uint64_t size = tt::count_leaves(f, t.root);
      best = std::max(best, size);
      if (depth > 0 && !golden_power_at_most(static_cast<int>(size), t.parent_size)) {
        report.add(t.root, "team-size",
                   "team of " + std::to_string(size) + " exceeds log_phi(" + std::to_string(t.parent_size) + ")");
      }
      if (!shape_ok) continue;

      for (NodeId v : all_nodes(f, t.root)) {
        const Node& n = f[v];
        if (n.is_leaf()) {
          if (!n.down.is_nil()) report.add(v, "down", "leaf has a down pointer");
          if (depth == 0 && base_layer == 0 && !n.upp.is_nil()) {
            report.add(v, "upp", "top-layer leaf has an upp pointer");
          }
        } else if (!n.upp.is_nil()) {
          report.add(v, "upp", "internal node has an upp pointer");
        }
      }

      for (NodeId head : path_heads(f, t.root)) {
        std::vector<NodeId> path = path_internals(f, head);
        std::vector<NodeId> slots;
        bool wired = true;
        for (NodeId w : path) {
          NodeId d = f[w].down;
          if (d.is_nil() || !f.is_leaf(d)) {
            report.add(w, "down", "internal node lacks a down leaf");
            wired = false;
            continue;
          }
          if (f[d].upp != w) report.add(w, "down-upp", "upp of down is not the node itself");
          if (f[d].layer != f[w].layer + 1) report.add(d, "layer", "down leaf is not one layer below");
          const Key want = f.key(tt::subordinate(f, w));
          if (f.key(d) != want) {
            report.add(w, "team-key", "down carries " + describe(f.key(d)) + ", subordinate is " + describe(want));
          }
          slots.push_back(d);
        }
        if (!wired) continue;
        NodeId team = f.find_root(slots.front());
        if (!seen_trees.insert(team).second) {
          report.add(head, "team-tree", "team tree shared with another path");
          continue;
        }
        if (tt::leaves(f, team) != slots) {
          report.add(head, "team-order", "team tree leaves differ from the path's downs in top-down order");
        }
        next.push_back({team, size});
      }
    }
    maxima.push_back(best);
    level = std::move(next);
  }

  for (std::size_t i = 1; i < maxima.size(); ++i) {
    if (!golden_power_at_most(static_cast<int>(maxima[i]), maxima[i - 1])) {
      report.add(root, "team-chain", "layer " + std::to_string(i) + " maximum exceeds log_phi of the layer above");
    }
  }
  double bound = static_cast<double>(maxima.front());
  for (std::size_t i = 1; i < maxima.size(); ++i) {
    bound = bound > 1.0 ? log_golden(bound) : 0.0;
    if (static_cast<double>(maxima[i]) > bound + 1e-9) {
      report.add(root, "team-bound", "layer " + std::to_string(i) + " maximum exceeds the iterated logarithm");
    }
  }
  const int layers = static_cast<int>(maxima.size()) - 1;
  if (maxima.front() > 1 && layers > iterated_log(kGoldenRatio, static_cast<double>(maxima.front()))) {
    report.add(root, "layer-number", std::to_string(layers) + " layers exceed the iterated log of the element count");
  }
  return report;
}

void destroy(Forest& f, NodeId root) {
  if (root.is_nil()) return;
  std::vector<NodeId> work{root};
  while (!work.empty()) {
    NodeId r = work.back();
    work.pop_back();
    for (NodeId head : path_heads(f, r)) {
      NodeId d = f[head].down;
      if (!d.is_nil()) work.push_back(f.find_root(d));
    }
    tt::destroy(f, r);
  }
}

}  // namespace ltt
}  // namespace dps
