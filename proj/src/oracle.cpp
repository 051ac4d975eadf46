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

#include "dps/oracle.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace dps {
namespace {

bool key_less(const Element& a, const Element& b) { return key_of(a) < key_of(b); }

std::size_t find_position(const std::vector<Element>& seq, ElementId elem) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i].id == elem) return i;
  }
  throw Error(ErrorCode::kUnknownElement, "element " + std::to_string(elem) + " is not in the list");
}

ValidationReport check_sequence(const std::vector<Element>& seq) {
  ValidationReport r;
  std::unordered_set<ElementId> ids;
  for (const Element& e : seq) {
    if (!ids.insert(e.id).second) r.add(kNil, "distinct-ids", "element " + std::to_string(e.id) + " repeats");
    if (e.value == kMinSentinel) r.add(kNil, "sentinel", "reserved value stored");
  }
  return r;
}

}  // namespace

std::vector<Element> sort_prefix(std::span<const Element> elements, std::size_t k) {
  std::vector<Element> out(elements.begin(), elements.end());
  std::sort(out.begin(), out.end(), key_less);
  out.resize(std::min(k, out.size()));
  return out;
}

// ---- NaiveEngine ----

std::vector<Element>& NaiveEngine::at(ListId list) {
  auto it = lists_.find(list);
  if (it == lists_.end()) throw Error(ErrorCode::kUnknownList, "no list " + std::to_string(list.value));
  return it->second;
}

const std::vector<Element>& NaiveEngine::at(ListId list) const {
  auto it = lists_.find(list);
  if (it == lists_.end()) throw Error(ErrorCode::kUnknownList, "no list " + std::to_string(list.value));
  return it->second;
}

std::size_t NaiveEngine::position(const std::vector<Element>& seq, ElementId elem) const {
  return find_position(seq, elem);
}

ListId NaiveEngine::add(std::vector<Element> seq) {
  ListId id{next_list_++};
  lists_.emplace(id, std::move(seq));
  return id;
}

ListId NaiveEngine::create(std::span<const Element> elements) {
  if (elements.empty()) throw Error(ErrorCode::kEmptyInput, "cannot create an empty list");
  for (const Element& e : elements) require_user_value(e.value);
  return add({elements.begin(), elements.end()});
}

std::vector<Element> NaiveEngine::psort(ListId list, std::size_t k) {
  const auto& seq = at(list);
  if (seq.empty()) throw Error(ErrorCode::kEmptyList, "psort on an empty list");
  return sort_prefix(seq, k);
}

void NaiveEngine::changeval(ListId list, ElementId elem, Value value) {
  require_user_value(value);
  auto& seq = at(list);
  seq[position(seq, elem)].value = value;
}

ListId NaiveEngine::link(ListId a, ListId b) {
  if (a == b) throw Error(ErrorCode::kUnknownList, "cannot link a list to itself");
  std::vector<Element> joined = at(a);
  const auto& tail = at(b);
  joined.insert(joined.end(), tail.begin(), tail.end());
  lists_.erase(a);
  lists_.erase(b);
  return add(std::move(joined));
}

std::pair<ListId, ListId> NaiveEngine::cut(ListId list, ElementId elem) {
  auto& seq = at(list);
  const std::size_t pos = position(seq, elem);
  std::vector<Element> head(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(pos) + 1);
  std::vector<Element> tail(seq.begin() + static_cast<std::ptrdiff_t>(pos) + 1, seq.end());
  lists_.erase(list);
  ListId a = add(std::move(head));
  ListId b = add(std::move(tail));
  return {a, b};
}

std::vector<Element> NaiveEngine::sequence(ListId list) const { return at(list); }

std::size_t NaiveEngine::size(ListId list) const { return at(list).size(); }

ValidationReport NaiveEngine::validate(ListId list) const { return check_sequence(at(list)); }

// ---- PqEngine ----

void PqEngine::heapify(std::vector<Key>& heap) { std::make_heap(heap.begin(), heap.end(), std::greater<>{}); }

PqEngine::Entry& PqEngine::at(ListId list) {
  auto it = lists_.find(list);
  if (it == lists_.end()) throw Error(ErrorCode::kUnknownList, "no list " + std::to_string(list.value));
  return it->second;
}

const PqEngine::Entry& PqEngine::at(ListId list) const {
  auto it = lists_.find(list);
  if (it == lists_.end()) throw Error(ErrorCode::kUnknownList, "no list " + std::to_string(list.value));
  return it->second;
}

ListId PqEngine::add(std::vector<Element> seq) {
  Entry e;
  e.heap.reserve(seq.size());
  for (const Element& x : seq) e.heap.push_back(key_of(x));
  heapify(e.heap);
  e.seq = std::move(seq);
  ListId id{next_list_++};
  lists_.emplace(id, std::move(e));
  return id;
}

ListId PqEngine::create(std::span<const Element> elements) {
  if (elements.empty()) throw Error(ErrorCode::kEmptyInput, "cannot create an empty list");
  for (const Element& e : elements) require_user_value(e.value);
  return add({elements.begin(), elements.end()});
}

std::vector<Element> PqEngine::psort(ListId list, std::size_t k) {
  const Entry& e = at(list);
  if (e.seq.empty()) throw Error(ErrorCode::kEmptyList, "psort on an empty list");
  std::vector<Key> heap = e.heap;
  std::vector<Element> out;
  while (out.size() < k && !heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), std::greater<>{});
    out.push_back(element_of(heap.back()));
    heap.pop_back();
    ++metrics_.pq_deletes;
  }
  return out;
}

void PqEngine::changeval(ListId list, ElementId elem, Value value) {
  require_user_value(value);
  Entry& e = at(list);
  const std::size_t pos = find_position(e.seq, elem);
  const Key old = key_of(e.seq[pos]);
  e.seq[pos].value = value;
  *std::find(e.heap.begin(), e.heap.end(), old) = key_of(e.seq[pos]);
  heapify(e.heap);
}

ListId PqEngine::link(ListId a, ListId b) {
  if (a == b) throw Error(ErrorCode::kUnknownList, "cannot link a list to itself");
  std::vector<Element> joined = at(a).seq;
  const auto& tail = at(b).seq;
  joined.insert(joined.end(), tail.begin(), tail.end());
  lists_.erase(a);
  lists_.erase(b);
  return add(std::move(joined));
}

std::pair<ListId, ListId> PqEngine::cut(ListId list, ElementId elem) {
  const auto& seq = at(list).seq;
  const std::size_t pos = find_position(seq, elem);
  std::vector<Element> head(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(pos) + 1);
  std::vector<Element> tail(seq.begin() + static_cast<std::ptrdiff_t>(pos) + 1, seq.end());
  lists_.erase(list);
  ListId a = add(std::move(head));
  ListId b = add(std::move(tail));
  return {a, b};
}

std::vector<Element> PqEngine::sequence(ListId list) const { return at(list).seq; }

std::size_t PqEngine::size(ListId list) const { return at(list).seq.size(); }

ValidationReport PqEngine::validate(ListId list) const {
  const Entry& e = at(list);
  ValidationReport r = check_sequence(e.seq);
  if (!std::is_heap(e.heap.begin(), e.heap.end(), std::greater<>{})) r.add(kNil, "heap-order", "heap property broken");
  if (e.heap.size() != e.seq.size()) r.add(kNil, "heap-size", "heap and sequence sizes differ");
  return r;
}

}  // namespace dps
