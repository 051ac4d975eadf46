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

#include <span>
#include <unordered_map>
#include <vector>

#include "dps/engine.hpp"

namespace dps {

// min(k, n) smallest by (value, id), ascending.
std::vector<Element> sort_prefix(std::span<const Element> elements, std::size_t k);

// Lists stored as plain sequences; psort sorts a copy. Ground truth.
class NaiveEngine final : public Engine {
 public:
  EngineKind kind() const override { return EngineKind::kOracle; }
  ListId create(std::span<const Element> elements) override;
  std::vector<Element> psort(ListId list, std::size_t k) override;
  void changeval(ListId list, ElementId elem, Value value) override;
  ListId link(ListId a, ListId b) override;
  std::pair<ListId, ListId> cut(ListId list, ElementId elem) override;
  std::vector<Element> sequence(ListId list) const override;
  std::size_t size(ListId list) const override;
  ValidationReport validate(ListId list) const override;
  Metrics& metrics() override { return metrics_; }

 private:
  std::vector<Element>& at(ListId list);
  const std::vector<Element>& at(ListId list) const;
  std::size_t position(const std::vector<Element>& seq, ElementId elem) const;
  ListId add(std::vector<Element> seq);

  std::unordered_map<ListId, std::vector<Element>> lists_;
  std::uint64_t next_list_ = 1;
  Metrics metrics_;
};

// Each list keeps its sequence plus a binary min-heap of its keys; psort
// pops from a copy of the heap. Cross-checks NaiveEngine.
class PqEngine final : public Engine {
 public:
  EngineKind kind() const override { return EngineKind::kPqOracle; }
  ListId create(std::span<const Element> elements) override;
  std::vector<Element> psort(ListId list, std::size_t k) override;
  void changeval(ListId list, ElementId elem, Value value) override;
  ListId link(ListId a, ListId b) override;
  std::pair<ListId, ListId> cut(ListId list, ElementId elem) override;
  std::vector<Element> sequence(ListId list) const override;
  std::size_t size(ListId list) const override;
  ValidationReport validate(ListId list) const override;
  Metrics& metrics() override { return metrics_; }

 private:
  struct Entry {
    std::vector<Element> seq;
    std::vector<Key> heap;
  };
  Entry& at(ListId list);
  const Entry& at(ListId list) const;
  ListId add(std::vector<Element> seq);
  void heapify(std::vector<Key>& heap);

  std::unordered_map<ListId, Entry> lists_;
  std::uint64_t next_list_ = 1;
  Metrics metrics_;
};

}  // namespace dps
