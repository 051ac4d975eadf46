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

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dps/types.hpp"

namespace dps {

enum class OpKind { kNew, kPsort, kChangeval, kLink, kCut };

std::string_view to_string(OpKind kind);

// One trace record. Elements are selected by value within their list.
struct TraceOp {
  OpKind kind = OpKind::kNew;
  std::string list;                  // new, psort, changeval, cut
  std::string a, b;                  // link inputs (consumed)
  std::string out;                   // link output
  std::string out_first, out_second; // cut outputs
  std::vector<Value> values;         // new
  Value elem = 0;                    // changeval, cut
  Value value = 0;                   // changeval
  std::size_t k = 0;                 // psort
  std::optional<std::vector<Value>> expect;

  friend bool operator==(const TraceOp&, const TraceOp&) = default;
};

struct OpTrace {
  std::vector<TraceOp> ops;

  friend bool operator==(const OpTrace&, const OpTrace&) = default;
};

// One JSON object per line; blank lines are skipped. Throws kTraceError
// naming the offending line.
OpTrace parse_trace(std::istream& in);
OpTrace parse_trace_string(std::string_view text);
TraceOp parse_op(std::string_view line);

std::string to_json_line(const TraceOp& op);
void write_trace(std::ostream& out, const OpTrace& trace);
std::string trace_to_string(const OpTrace& trace);

}  // namespace dps
