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
#include <string_view>
#include <utility>
#include <vector>

#include "dps/core_tt.hpp"
#include "dps/metrics.hpp"
#include "dps/types.hpp"

namespace dps {

enum class EngineKind { kTt, kLtt, kOracle, kPqOracle };

std::string_view to_string(EngineKind kind);
// Accepts "tt", "ltt", "oracle" and "pq"; throws std::invalid_argument.
EngineKind parse_engine(std::string_view name);

struct ListId {
  std::uint64_t value = 0;
  friend auto operator<=>(const ListId&, const ListId&) = default;
  friend bool operator==(const ListId&, const ListId&) = default;
};

// Common surface of the three list engines. Element ids are chosen by the
// caller so that several engines can shadow one another on identical ids.
// link and cut consume their input lists.
class Engine {
 public:
  virtual ~Engine() = default;

  virtual EngineKind kind() const = 0;
  virtual ListId create(std::span<const Element> elements) = 0;
  virtual std::vector<Element> psort(ListId list, std::size_t k) = 0;
  virtual void changeval(ListId list, ElementId elem, Value value) = 0;
  virtual ListId link(ListId a, ListId b) = 0;
  virtual std::pair<ListId, ListId> cut(ListId list, ElementId elem) = 0;
  virtual std::vector<Element> sequence(ListId list) const = 0;
  virtual std::size_t size(ListId list) const = 0;
  virtual ValidationReport validate(ListId list) const = 0;
  virtual Metrics& metrics() = 0;
};

std::unique_ptr<Engine> make_engine(EngineKind kind);

}  // namespace dps

template <>
struct std::hash<dps::ListId> {
  std::size_t operator()(const dps::ListId& l) const noexcept { return std::hash<std::uint64_t>{}(l.value); }
};
