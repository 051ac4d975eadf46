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

#include "dps/engine.hpp"

#include <stdexcept>
#include <string>

#include "dps/ltt_update.hpp"
#include "dps/oracle.hpp"
#include "dps/tt_dynamic.hpp"

namespace dps {

std::string_view to_string(EngineKind kind) {
  switch (kind) {
    case EngineKind::kTt: return "tt";
    case EngineKind::kLtt: return "ltt";
    case EngineKind::kOracle: return "oracle";
    case EngineKind::kPqOracle: return "pq";
  }
  return "?";
}

EngineKind parse_engine(std::string_view name) {
  if (name == "tt") return EngineKind::kTt;
  if (name == "ltt") return EngineKind::kLtt;
  if (name == "oracle") return EngineKind::kOracle;
  if (name == "pq") return EngineKind::kPqOracle;
  throw std::invalid_argument("unknown engine '" + std::string(name) + "'");
}

std::unique_ptr<Engine> make_engine(EngineKind kind) {
  switch (kind) {
    case EngineKind::kTt: return std::make_unique<TtEngine>();
    case EngineKind::kLtt: return std::make_unique<LttEngine>();
    case EngineKind::kOracle: return std::make_unique<NaiveEngine>();
    case EngineKind::kPqOracle: return std::make_unique<PqEngine>();
  }
  throw std::invalid_argument("unknown engine kind");
}

}  // namespace dps
