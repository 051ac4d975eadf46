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
#include <memory>
#include <span>
#include <unordered_set>
#include <vector>

#include "dps/ltt_core.hpp"

namespace dps {
namespace ltt {

// Lazily yields the leaves of one tree in increasing key order. The queue
// holds internal nodes whose subordinate subtree is not yet entered; each
// entry carries the child iterator over the team tree it came from, which
// itself yields those nodes in order. Any structural update of the forest
// invalidates the iterator (kInvalidated on the next call).
class PsortIterator {
 public:
  PsortIterator(Forest& f, NodeId root);

  // Next origin leaf, or nil when exhausted.
  NodeId next();

  // Seeds the queue from the last returned leaf's path. next() does this on
  // its own; calling it early exposes the candidate queue for inspection.
  void prime();

  // Internal nodes currently queued.
  std::vector<NodeId> queued() const;

 private:
  struct Entry {
    Key key;
    NodeId node;
    std::size_t source;
  };

  void push(const Entry& e);
  Entry pop();
  void check_version() const;

  Forest* f_;
  NodeId root_;
  std::uint64_t version_;
  bool started_ = false;
  bool seed_pending_ = false;
  NodeId last_;
  std::vector<Entry> heap_;
  std::vector<std::unique_ptr<PsortIterator>> sources_;
};

// The min(k, n) smallest elements of the tree rooted at `root`.
std::vector<Element> psort(Forest& f, NodeId root, std::size_t k);

// Literal evaluation of the candidate-set definition for a prefix of outputs
// (layer-0 leaves, in output order): every internal node v on a path of an
// output such that, along that path, the nodes with subordinate smaller than
// v's are exactly those sitting just above another output's path.
std::unordered_set<NodeId> candidate_set_bruteforce(const Forest& f, std::span<const NodeId> outputs);

}  // namespace ltt
}  // namespace dps
