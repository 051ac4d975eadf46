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

#include "dps/trace.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace dps {
namespace {

using nlohmann::json;

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw Error(ErrorCode::kTraceError, std::string("missing field '") + name + "'");
  return *it;
}

std::string label(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_string() || v.get<std::string>().empty()) {
    throw Error(ErrorCode::kTraceError, std::string("field '") + name + "' must be a non-empty string");
  }
  return v.get<std::string>();
}

Value number(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer()) throw Error(ErrorCode::kTraceError, std::string("field '") + name + "' must be an integer");
  return v.get<Value>();
}

std::vector<Value> numbers(const json& v, const char* name) {
  if (!v.is_array()) throw Error(ErrorCode::kTraceError, std::string("field '") + name + "' must be an array");
  std::vector<Value> out;
  for (const json& x : v) {
    if (!x.is_number_integer()) throw Error(ErrorCode::kTraceError, std::string("field '") + name + "' holds a non-integer");
    out.push_back(x.get<Value>());
  }
  return out;
}

}  // namespace

std::string_view to_string(OpKind kind) {
  switch (kind) {
    case OpKind::kNew: return "new";
    case OpKind::kPsort: return "psort";
    case OpKind::kChangeval: return "changeval";
    case OpKind::kLink: return "link";
    case OpKind::kCut: return "cut";
  }
  return "?";
}

TraceOp parse_op(std::string_view line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(ErrorCode::kTraceError, "not a JSON object");
  const json& op = field(j, "op");
  if (!op.is_string()) throw Error(ErrorCode::kTraceError, "field 'op' must be a string");
  const std::string name = op.get<std::string>();

  TraceOp t;
  if (name == "new") {
    t.kind = OpKind::kNew;
    t.list = label(j, "list");
    t.values = numbers(field(j, "values"), "values");
  } else if (name == "psort") {
    t.kind = OpKind::kPsort;
    t.list = label(j, "list");
    const Value k = number(j, "k");
    if (k < 1) throw Error(ErrorCode::kTraceError, "k must be positive");
    t.k = static_cast<std::size_t>(k);
    if (j.contains("expect")) t.expect = numbers(j["expect"], "expect");
  } else if (name == "changeval") {
    t.kind = OpKind::kChangeval;
    t.list = label(j, "list");
    t.elem = number(j, "elem");
    t.value = number(j, "value");
  } else if (name == "link") {
    t.kind = OpKind::kLink;
    t.a = label(j, "a");
    t.b = label(j, "b");
    t.out = label(j, "out");
  } else if (name == "cut") {
    t.kind = OpKind::kCut;
    t.list = label(j, "list");
    t.elem = number(j, "elem");
    const json& out = field(j, "out");
    if (!out.is_array() || out.size() != 2 || !out[0].is_string() || !out[1].is_string()) {
      throw Error(ErrorCode::kTraceError, "cut 'out' must be two labels");
    }
    t.out_first = out[0].get<std::string>();
    t.out_second = out[1].get<std::string>();
  } else {
    throw Error(ErrorCode::kTraceError, "unknown op '" + name + "'");
  }
  return t;
}

OpTrace parse_trace(std::istream& in) {
  OpTrace trace;
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      trace.ops.push_back(parse_op(line));
    } catch (const Error& e) {
      throw Error(ErrorCode::kTraceError, "line " + std::to_string(no) + ": " + e.detail());
    }
  }
  return trace;
}

OpTrace parse_trace_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_trace(in);
}

std::string to_json_line(const TraceOp& t) {
  json j;
  j["op"] = std::string(to_string(t.kind));
  switch (t.kind) {
    case OpKind::kNew:
      j["list"] = t.list;
      j["values"] = t.values;
      break;
    case OpKind::kPsort:
      j["list"] = t.list;
      j["k"] = t.k;
      if (t.expect) j["expect"] = *t.expect;
      break;
    case OpKind::kChangeval:
      j["list"] = t.list;
      j["elem"] = t.elem;
      j["value"] = t.value;
      break;
    case OpKind::kLink:
      j["a"] = t.a;
      j["b"] = t.b;
      j["out"] = t.out;
      break;
    case OpKind::kCut:
      j["list"] = t.list;
      j["elem"] = t.elem;
      j["out"] = {t.out_first, t.out_second};
      break;
  }
  return j.dump();
}

void write_trace(std::ostream& out, const OpTrace& trace) {
  for (const TraceOp& op : trace.ops) out << to_json_line(op) << '\n';
}

std::string trace_to_string(const OpTrace& trace) {
  std::ostringstream os;
  write_trace(os, trace);
  return os.str();
}

}  // namespace dps
