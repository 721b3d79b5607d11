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

#include "capsim/harness/report.h"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace capsim::harness {
namespace {

using nlohmann::json;

template <typename T>
json optional_json(const std::optional<T> &v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<std::string> optional_string(const json &j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::string>();
}

SealSemanticsMode parse_seal_mode(const std::string &s) {
  if (s == seal_mode_name(SealSemanticsMode::kFaultOnModify)) {
    return SealSemanticsMode::kFaultOnModify;
  }
  if (s == seal_mode_name(SealSemanticsMode::kInvalidateOnModify)) {
    return SealSemanticsMode::kInvalidateOnModify;
  }
  throw std::invalid_argument("unknown seal mode: " + s);
}

vm::Variant parse_variant(const std::string &s) {
  if (s == vm::variant_name(vm::Variant::kBuggy)) return vm::Variant::kBuggy;
  if (s == vm::variant_name(vm::Variant::kFixed)) return vm::Variant::kFixed;
  throw std::invalid_argument("unknown mode: " + s);
}

vm::OptLevel parse_opt(const std::string &s) {
  if (s == vm::opt_level_name(vm::OptLevel::kO0)) return vm::OptLevel::kO0;
  if (s == vm::opt_level_name(vm::OptLevel::kO1)) return vm::OptLevel::kO1;
  throw std::invalid_argument("unknown opt level: " + s);
}

std::optional<FaultKind> parse_fault(const json &j) {
  if (j.is_null()) return std::nullopt;
  auto kind = parse_fault_kind(j.get<std::string>());
  if (!kind) throw std::invalid_argument("unknown fault kind");
  return kind;
}

vm::OutcomeKind parse_kind(const json &j) {
  auto kind = vm::parse_outcome_kind(j.get<std::string>());
  if (!kind) throw std::invalid_argument("unknown outcome kind");
  return *kind;
}

json fault_json(const std::optional<FaultKind> &f) {
  return f ? json(std::string(fault_kind_name(*f))) : json(nullptr);
}

RunRecord run_cell(vm::ScenarioId id, vm::Variant mode,
                   std::optional<SealSemanticsMode> seal,
                   std::optional<vm::OptLevel> opt, uint64_t seed) {
  vm::ScenarioConfig config;
  config.seal_mode = seal.value_or(SealSemanticsMode::kFaultOnModify);
  config.opt_level = opt.value_or(vm::OptLevel::kO0);
  config.seed = seed;
  const vm::ScenarioOutcome outcome = vm::run_scenario(id, mode, config);

  RunRecord r;
  r.scenario = id;
  r.mode = mode;
  r.seal_mode = seal;
  r.opt_level = opt;
  r.outcome = {outcome.kind, outcome.fault, outcome.expected, outcome.actual,
               outcome.detail};
  r.expected =
      vm::expected_outcome(id, mode, config.seal_mode, config.opt_level);
  r.pass = outcome.matches(r.expected);
  return r;
}

std::string buggy_expectation_text(const vm::ScenarioInfo &info) {
  auto expect = [&](SealSemanticsMode s, vm::OptLevel o) {
    return vm::to_string(
        vm::expected_outcome(info.id, vm::Variant::kBuggy, s, o));
  };
  constexpr auto kFault = SealSemanticsMode::kFaultOnModify;
  constexpr auto kInvalidate = SealSemanticsMode::kInvalidateOnModify;
  if (info.opt_sensitive) {
    return "fault/O0=" + expect(kFault, vm::OptLevel::kO0) +
           " invalidate/O0=" + expect(kInvalidate, vm::OptLevel::kO0) +
           " O1=" + expect(kFault, vm::OptLevel::kO1);
  }
  if (info.seal_sensitive) {
    return "fault=" + expect(kFault, vm::OptLevel::kO0) +
           " invalidate=" + expect(kInvalidate, vm::OptLevel::kO0);
  }
  return expect(kFault, vm::OptLevel::kO0);
}

}  // namespace

Report run(const RunSpec &spec) {
  Report report;
  report.seed = spec.seed;
  for (vm::ScenarioId id : spec.scenarios) {
    const vm::ScenarioInfo &info = vm::scenario_info(id);
    std::vector<std::optional<SealSemanticsMode>> seals;
    if (info.seal_sensitive) {
      for (auto s : spec.seal_modes) seals.emplace_back(s);
    } else {
      seals.emplace_back(std::nullopt);
    }
    std::vector<std::optional<vm::OptLevel>> opts;
    if (info.opt_sensitive) {
      for (auto o : spec.opt_levels) opts.emplace_back(o);
    } else {
      opts.emplace_back(std::nullopt);
    }
    for (vm::Variant mode : spec.modes) {
      for (const auto &seal : seals) {
        for (const auto &opt : opts) {
          report.records.push_back(run_cell(id, mode, seal, opt, spec.seed));
        }
      }
    }
  }
  for (const RunRecord &r : report.records) {
    ++report.summary.total;
    ++(r.pass ? report.summary.passed : report.summary.failed);
  }
  return report;
}

int exit_status(const Report &report) {
  for (const RunRecord &r : report.records) {
    if (!r.pass) return 1;
  }
  return 0;
}

json to_json(const Report &report) {
  json records = json::array();
  for (const RunRecord &r : report.records) {
    records.push_back({
        {"scenario", vm::scenario_key(r.scenario)},
        {"mode", std::string(vm::variant_name(r.mode))},
        {"seal_mode", r.seal_mode ? json(std::string(seal_mode_name(*r.seal_mode)))
                                  : json(nullptr)},
        {"opt_level", r.opt_level ? json(std::string(vm::opt_level_name(*r.opt_level)))
                                  : json(nullptr)},
        {"outcome",
         {{"kind", std::string(vm::outcome_kind_name(r.outcome.kind))},
          {"fault", fault_json(r.outcome.fault)},
          {"expected", optional_json(r.outcome.expected)},
          {"actual", optional_json(r.outcome.actual)},
          {"detail", r.outcome.detail}}},
        {"expected",
         {{"kind", std::string(vm::outcome_kind_name(r.expected.kind))},
          {"fault", fault_json(r.expected.fault)}}},
        {"pass", r.pass},
    });
  }
  return {
      {"version", report.version},
      {"seed", report.seed},
      {"records", records},
      {"summary",
       {{"total", report.summary.total},
        {"passed", report.summary.passed},
        {"failed", report.summary.failed}}},
  };
}

Report report_from_json(const json &j) {
  Report report;
  report.version = j.at("version").get<std::string>();
  report.seed = j.at("seed").get<uint64_t>();
  for (const json &rj : j.at("records")) {
    RunRecord r;
    auto id = vm::parse_scenario_id(rj.at("scenario").get<std::string>());
    if (!id) throw std::invalid_argument("unknown scenario id in report");
    r.scenario = *id;
    r.mode = parse_variant(rj.at("mode").get<std::string>());
    if (!rj.at("seal_mode").is_null()) {
      r.seal_mode = parse_seal_mode(rj.at("seal_mode").get<std::string>());
    }
    if (!rj.at("opt_level").is_null()) {
      r.opt_level = parse_opt(rj.at("opt_level").get<std::string>());
    }
    const json &oj = rj.at("outcome");
    r.outcome.kind = parse_kind(oj.at("kind"));
    r.outcome.fault = parse_fault(oj.at("fault"));
    r.outcome.expected = optional_string(oj.at("expected"));
    r.outcome.actual = optional_string(oj.at("actual"));
    r.outcome.detail = oj.at("detail").get<std::string>();
    const json &ej = rj.at("expected");
    r.expected.kind = parse_kind(ej.at("kind"));
    r.expected.fault = parse_fault(ej.at("fault"));
    r.pass = rj.at("pass").get<bool>();
    report.records.push_back(std::move(r));
  }
  const json &sj = j.at("summary");
  report.summary.total = sj.at("total").get<size_t>();
  report.summary.passed = sj.at("passed").get<size_t>();
  report.summary.failed = sj.at("failed").get<size_t>();
  return report;
}

std::string format_text(const Report &report) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof(line), "%-4s %-6s %-10s %-3s %-18s %-18s %s\n",
                "id", "mode", "seal", "opt", "outcome", "expected", "result");
  os << line;
  for (const RunRecord &r : report.records) {
    const std::string outcome =
        r.outcome.kind == vm::OutcomeKind::kFault && r.outcome.fault
            ? std::string(fault_kind_name(*r.outcome.fault))
            : std::string(vm::outcome_kind_name(r.outcome.kind));
    std::snprintf(
        line, sizeof(line), "%-4s %-6s %-10s %-3s %-18s %-18s %s\n",
        vm::scenario_key(r.scenario).c_str(),
        std::string(vm::variant_name(r.mode)).c_str(),
        r.seal_mode ? std::string(seal_mode_name(*r.seal_mode)).c_str() : "-",
        r.opt_level ? std::string(vm::opt_level_name(*r.opt_level)).c_str() : "-",
        outcome.c_str(), vm::to_string(r.expected).c_str(),
        r.pass ? "PASS" : "FAIL");
    os << line;
    if (!r.outcome.detail.empty()) os << "       " << r.outcome.detail << '\n';
  }
  os << report.summary.passed << '/' << report.summary.total << " passed, "
     << report.summary.failed << " failed (" << report.version << ", seed "
     << report.seed << ")\n";
  return os.str();
}

std::string catalogue_text() {
  std::ostringstream os;
  char line[256];
  for (vm::ScenarioId id : vm::all_scenarios()) {
    const vm::ScenarioInfo &info = vm::scenario_info(id);
    std::snprintf(line, sizeof(line), "%-4s %-22s %-52s buggy: %s\n",
                  vm::scenario_key(id).c_str(), std::string(info.name).c_str(),
                  std::string(info.title).c_str(),
                  buggy_expectation_text(info).c_str());
    os << line;
  }
  return os.str();
}

json catalogue_json() {
  json out = json::array();
  for (vm::ScenarioId id : vm::all_scenarios()) {
    const vm::ScenarioInfo &info = vm::scenario_info(id);
    out.push_back({{"scenario", vm::scenario_key(id)},
                   {"name", std::string(info.name)},
                   {"title", std::string(info.title)},
                   {"seal_sensitive", info.seal_sensitive},
                   {"opt_sensitive", info.opt_sensitive},
                   {"buggy_expectation", buggy_expectation_text(info)}});
  }
  return out;
}

}  // namespace capsim::harness
