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

#include "dps/ltt_query.hpp"

#include <algorithm>

namespace dps {
namespace ltt {

PsortIterator::PsortIterator(Forest& f, NodeId root) : f_(&f), root_(root), version_(f.version) {}

void PsortIterator::check_version() const {
  if (f_->version != version_) throw Error(ErrorCode::kInvalidated, "structure changed since the iterator was made");
}

void PsortIterator::push(const Entry& e) {
  heap_.push_back(e);
  Forest& f = *f_;
  std::push_heap(heap_.begin(), heap_.end(), [&f](const Entry& a, const Entry& b) {
    ++f.metrics.comparisons;
    return a.key > b.key;
  });
  ++f.metrics.pq_inserts;
}

PsortIterator::Entry PsortIterator::pop() {
  Forest& f = *f_;
  std::pop_heap(heap_.begin(), heap_.end(), [&f](const Entry& a, const Entry& b) {
    ++f.metrics.comparisons;
    return a.key > b.key;
  });
  Entry e = heap_.back();
  heap_.pop_back();
  ++f.metrics.pq_deletes;
  return e;
}

void PsortIterator::prime() {
  check_version();
  if (!seed_pending_) return;
  seed_pending_ = false;
  Forest& f = *f_;
  NodeId p = f.parent(last_);
  if (p.is_nil() || f.key(p) != f.key(last_)) return;
  // The path entered at last_'s head has a team; its smallest member marks
  // the first node whose subordinate subtree must be opened.
  sources_.push_back(std::make_unique<PsortIterator>(f, f.root_of(f[p].down)));
  NodeId a = sources_.back()->next();
  push({f.key(a), f[a].upp, sources_.size() - 1});
}

NodeId PsortIterator::next() {
  check_version();
  Forest& f = *f_;
  if (!started_) {
    started_ = true;
    if (root_.is_nil()) return kNil;
    ++f.metrics.nodes_visited;
    last_ = f[root_].origin;
    seed_pending_ = true;
    return last_;
  }
  prime();
  if (heap_.empty()) return kNil;
  Entry e = pop();
  ++f.metrics.nodes_visited;
  last_ = f[tt::subordinate(f, e.node)].origin;
  seed_pending_ = true;
  NodeId b = sources_[e.source]->next();
  if (!b.is_nil()) push({f.key(b), f[b].upp, e.source});
  return last_;
}

std::vector<NodeId> PsortIterator::queued() const {
  std::vector<NodeId> out;
  for (const Entry& e : heap_) out.push_back(e.node);
  return out;
}

std::vector<Element> psort(Forest& f, NodeId root, std::size_t k) {
  if (root.is_nil()) throw Error(ErrorCode::kEmptyTree, "psort on an empty tree");
  PsortIterator it(f, root);
  std::vector<Element> out;
  while (out.size() < k) {
    NodeId leaf = it.next();
    if (leaf.is_nil()) break;
    out.push_back(element_of(f.key(leaf)));
  }
  return out;
}

std::unordered_set<NodeId> candidate_set_bruteforce(const Forest& f, std::span<const NodeId> outputs) {
  auto path_of = [&f](NodeId u) {
    std::vector<NodeId> nodes;
    for (NodeId w = f.parent(u); !w.is_nil() && f.key(w) == f.key(u); w = f.parent(w)) nodes.push_back(w);
    return nodes;
  };
  std::unordered_set<NodeId> above;
  for (NodeId u : outputs) {
    NodeId w = u;
    while (!f.parent(w).is_nil() && f.key(f.parent(w)) == f.key(u)) w = f.parent(w);
    if (!f.parent(w).is_nil()) above.insert(f.parent(w));
  }
  std::unordered_set<NodeId> out;
  for (NodeId u : outputs) {
    std::vector<NodeId> path = path_of(u);
    for (NodeId v : path) {
      const Key kv = f.key(tt::subordinate(f, v));
      bool ok = true;
      for (NodeId w : path) {
        const bool smaller = f.key(tt::subordinate(f, w)) < kv;
        if (smaller != (above.count(w) > 0)) {
          ok = false;
          break;
        }
      }
      if (ok) out.insert(v);
    }
  }
  return out;
}

}  // namespace ltt
}  // namespace dps
