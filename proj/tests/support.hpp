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

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "dps/forest.hpp"
#include "dps/types.hpp"

namespace dps::testing {

inline std::vector<Element> make_elements(const std::vector<Value>& values) {
  std::vector<Element> out;
  for (Value v : values) out.push_back(Element{next_element_id(), v});
  return out;
}

inline std::vector<Value> values_of(const std::vector<Element>& xs) {
  std::vector<Value> out;
  for (const Element& e : xs) out.push_back(e.value);
  return out;
}

inline std::vector<ElementId> ids_of(const std::vector<Element>& xs) {
  std::vector<ElementId> out;
  for (const Element& e : xs) out.push_back(e.id);
  return out;
}

// Independent reference: stable sort by value keeps creation order among
// equal values, which is the (value, id) order for fresh ids.
inline std::vector<Element> expected_prefix(std::vector<Element> xs, std::size_t k) {
  std::stable_sort(xs.begin(), xs.end(), [](const Element& a, const Element& b) {
    return a.value != b.value ? a.value < b.value : a.id < b.id;
  });
  xs.resize(std::min(k, xs.size()));
  return xs;
}

inline std::vector<Element> random_elements(std::mt19937_64& rng, std::size_t n, Value lo = -1000, Value hi = 1000) {
  std::uniform_int_distribution<Value> pick(lo, hi);
  std::vector<Element> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(Element{next_element_id(), pick(rng)});
  return out;
}

inline std::vector<Element> random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<Value> v(n);
  std::iota(v.begin(), v.end(), Value{1});
  std::shuffle(v.begin(), v.end(), rng);
  return make_elements(v);
}

inline std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace dps::testing
