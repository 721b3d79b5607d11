// Copyright 2026 The capsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CAPSIM_VM_SCENARIO_H_
#define CAPSIM_VM_SCENARIO_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "capsim/capability.h"
#include "capsim/fault.h"
#include "capsim/vm/value.h"

namespace capsim::vm {

enum class ScenarioId : uint8_t {
  kS1 = 1,  // stack_scan_bounds
  kS2,      // ambiguous_pointer
  kS3,      // inplace_realloc
  kS4,      // bitmap_padding
  kS5,      // shape_id
  kS6,      // utf8_count
  kS7,      // backtrace_symbols
  kS8,      // insn_hash
  kS9,      // immediate_test_sealed
  kS10,     // downcast_sizet
  kS11,     // mprotect_tags
  kS12,     // makecontext_args
};

inline constexpr size_t kScenarioCount = 12;

std::span<const ScenarioId> all_scenarios();
// "S1" .. "S12"
std::string scenario_key(ScenarioId id);
std::optional<ScenarioId> parse_scenario_id(std::string_view key);

struct ScenarioInfo {
  ScenarioId id;
  std::string_view name;
  std::string_view title;
  // The buggy outcome depends on the seal-semantics mode.
  bool seal_sensitive;
  // The buggy outcome depends on the simulated optimisation level.
  bool opt_sensitive;
};

const ScenarioInfo &scenario_info(ScenarioId id);

enum class OutcomeKind : uint8_t { kOk, kFault, kCorrupt };

std::string_view outcome_kind_name(OutcomeKind kind);  // "ok", "fault", "corrupt"
std::optional<OutcomeKind> parse_outcome_kind(std::string_view name);

struct Expectation {
  OutcomeKind kind = OutcomeKind::kOk;
  std::optional<FaultKind> fault;

  bool operator==(const Expectation &) const = default;
};

std::string to_string(const Expectation &e);

// The catalogued outcome of one cell of the matrix.
Expectation expected_outcome(ScenarioId id, Variant mode,
                             SealSemanticsMode seal_mode, OptLevel opt_level);

// Optional overrides of a scenario's built-in input.
struct ScenarioInputs {
  std::optional<std::vector<size_t>> mark_set;         // S4, indices < 512
  std::optional<std::vector<uint8_t>> utf8_bytes;      // S6
  std::optional<uint64_t> dispatch_address;           // S8, inside code
  std::optional<uint16_t> shape_id;                    // S5
};

struct ScenarioConfig {
  SealSemanticsMode seal_mode = SealSemanticsMode::kFaultOnModify;
  OptLevel opt_level = OptLevel::kO0;
  uint64_t seed = 0;
  ScenarioInputs inputs;
};

struct ScenarioOutcome {
  ScenarioId scenario = ScenarioId::kS1;
  Variant mode = Variant::kFixed;
  SealSemanticsMode seal_mode = SealSemanticsMode::kFaultOnModify;
  std::optional<OptLevel> opt_level;  // only for opt-sensitive scenarios
  OutcomeKind kind = OutcomeKind::kOk;
  std::optional<FaultKind> fault;
  // Oracle value and computed value, when the scenario computes one.
  std::optional<std::string> expected;
  std::optional<std::string> actual;
  std::string detail;

  bool matches(const Expectation &e) const {
    return kind == e.kind && fault == e.fault;
  }
  bool operator==(const ScenarioOutcome &) const = default;
};

std::ostream &operator<<(std::ostream &os, const ScenarioOutcome &o);

// Number of bits in the scenario's mark bitmap.
inline constexpr size_t kBitmapScenarioBits = 512;

// Runs one scenario on a fresh simulator instance. Identical arguments
// give identical outcomes. Throws std::invalid_argument for malformed
// inputs (e.g. an out-of-range mark index).
ScenarioOutcome run_scenario(ScenarioId id, Variant mode,
                             const ScenarioConfig &config);

}  // namespace capsim::vm

#endif  // CAPSIM_VM_SCENARIO_H_
