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

#ifndef CAPSIM_HARNESS_REPORT_H_
#define CAPSIM_HARNESS_REPORT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "capsim/capability.h"
#include "capsim/fault.h"
#include "capsim/vm/scenario.h"
#include "capsim/vm/value.h"
#include "json.hpp"

namespace capsim::harness {

inline constexpr std::string_view kSimulatorVersion = "capsim 1.0.0";

enum class OutputFormat : uint8_t { kText, kJson };

// The cross product to execute. Seal modes apply only to seal-sensitive
// scenarios and opt levels only to opt-sensitive ones; other scenarios run
// once per mode with those dimensions absent.
struct RunSpec {
  std::vector<vm::ScenarioId> scenarios;
  std::vector<vm::Variant> modes = {vm::Variant::kBuggy, vm::Variant::kFixed};
  std::vector<SealSemanticsMode> seal_modes = {
      SealSemanticsMode::kFaultOnModify, SealSemanticsMode::kInvalidateOnModify};
  std::vector<vm::OptLevel> opt_levels = {vm::OptLevel::kO0, vm::OptLevel::kO1};
  uint64_t seed = 0;
};

struct OutcomeRecord {
  vm::OutcomeKind kind = vm::OutcomeKind::kOk;
  std::optional<FaultKind> fault;
  std::optional<std::string> expected;
  std::optional<std::string> actual;
  std::string detail;

  bool operator==(const OutcomeRecord &) const = default;
};

struct RunRecord {
  vm::ScenarioId scenario = vm::ScenarioId::kS1;
  vm::Variant mode = vm::Variant::kFixed;
  std::optional<SealSemanticsMode> seal_mode;
  std::optional<vm::OptLevel> opt_level;
  OutcomeRecord outcome;
  vm::Expectation expected;
  bool pass = false;

  bool operator==(const RunRecord &) const = default;
};

struct Summary {
  size_t total = 0;
  size_t passed = 0;
  size_t failed = 0;

  bool operator==(const Summary &) const = default;
};

struct Report {
  std::string version = std::string(kSimulatorVersion);
  uint64_t seed = 0;
  std::vector<RunRecord> records;
  Summary summary;

  bool operator==(const Report &) const = default;
};

// Executes every requested cell, ordered by (scenario, mode, seal mode,
// opt level).
Report run(const RunSpec &spec);

// 0 when every record passed, 1 otherwise.
int exit_status(const Report &report);

nlohmann::json to_json(const Report &report);
// Throws nlohmann::json::exception or std::invalid_argument on malformed
// input.
Report report_from_json(const nlohmann::json &json);

std::string format_text(const Report &report);

// Scenario catalogue with the buggy-mode expectation of every config.
std::string catalogue_text();
nlohmann::json catalogue_json();

}  // namespace capsim::harness

#endif  // CAPSIM_HARNESS_REPORT_H_
