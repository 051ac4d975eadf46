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

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dps {

using Value = std::int64_t;
using ElementId = std::uint64_t;

// Reserved for LTT cut; never accepted from callers.
inline constexpr Value kMinSentinel = std::numeric_limits<Value>::min();

// Process-wide, monotonically increasing; ids are never reused.
ElementId next_element_id();

struct Element {
  ElementId id = 0;
  Value value = 0;

  friend bool operator==(const Element&, const Element&) = default;
};

// Nodes compare on (value, tiebreak) so that duplicate user values still
// induce a strict order. `tiebreak` is the id of the element the value
// originates from.
struct Key {
  Value value = 0;
  ElementId tiebreak = 0;

  friend auto operator<=>(const Key&, const Key&) = default;
  friend bool operator==(const Key&, const Key&) = default;
};

inline Key key_of(const Element& e) { return Key{e.value, e.id}; }
inline Element element_of(const Key& k) { return Element{k.tiebreak, k.value}; }

enum class ErrorCode {
  kEmptyInput,
  kSentinelValue,
  kNotInternal,
  kNotRightChild,
  kNotLeftChild,
  kNoParent,
  kUnknownElement,
  kEmptyTree,
  kEmptyList,
  kUnknownList,
  kPathTooShort,
  kBadBase,
  kInvalidated,
  kTraceError,
  kMismatch,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const { return code_; }
  // Message without the code prefix.
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

// Throws kSentinelValue if `v` is the reserved minimum.
void require_user_value(Value v);

// Strong handle into a Forest's node arena.
struct NodeId {
  static constexpr std::uint32_t kNilValue = std::numeric_limits<std::uint32_t>::max();

  std::uint32_t value = kNilValue;

  constexpr bool is_nil() const { return value == kNilValue; }
  constexpr explicit operator bool() const { return !is_nil(); }

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
  friend bool operator==(const NodeId&, const NodeId&) = default;
};

inline constexpr NodeId kNil{};

}  // namespace dps

template <>
struct std::hash<dps::NodeId> {
  std::size_t operator()(const dps::NodeId& n) const noexcept {
    return std::hash<std::uint32_t>{}(n.value);
  }
};
