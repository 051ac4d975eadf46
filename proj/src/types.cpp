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

#include "dps/types.hpp"

#include <atomic>

namespace dps {

ElementId next_element_id() {
  static std::atomic<ElementId> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kSentinelValue: return "SentinelValue";
    case ErrorCode::kNotInternal: return "NotInternal";
    case ErrorCode::kNotRightChild: return "NotRightChild";
    case ErrorCode::kNotLeftChild: return "NotLeftChild";
    case ErrorCode::kNoParent: return "NoParent";
    case ErrorCode::kUnknownElement: return "UnknownElement";
    case ErrorCode::kEmptyTree: return "EmptyTree";
    case ErrorCode::kEmptyList: return "EmptyList";
    case ErrorCode::kUnknownList: return "UnknownList";
    case ErrorCode::kPathTooShort: return "PathTooShort";
    case ErrorCode::kBadBase: return "BadBase";
    case ErrorCode::kInvalidated: return "Invalidated";
    case ErrorCode::kTraceError: return "TraceError";
    case ErrorCode::kMismatch: return "Mismatch";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code), detail_(detail) {}

void require_user_value(Value v) {
  if (v == kMinSentinel) throw Error(ErrorCode::kSentinelValue, "value is reserved");
}

}  // namespace dps
