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

#include <gtest/gtest.h>

#include <string>

#include "capsim/vm/scenario.h"
#include "json.hpp"

namespace capsim::harness {
namespace {

RunSpec everything(uint64_t seed = 0) {
  RunSpec spec;
  spec.scenarios.assign(vm::all_scenarios().begin(), vm::all_scenarios().end());
  spec.seed = seed;
  return spec;
}

TEST(ReportTest, FullMatrixPasses) {
  const Report report = run(everything());
  EXPECT_EQ(report.records.size(), 34u);
  EXPECT_EQ(report.summary.total, 34u);
  EXPECT_EQ(report.summary.passed, 34u);
  EXPECT_EQ(report.summary.failed, 0u);
  EXPECT_EQ(exit_status(report), 0);
  EXPECT_EQ(report.version, kSimulatorVersion);
}

TEST(ReportTest, DimensionsOnlyWhereApplicable) {
  const Report report = run(everything());
  for (const RunRecord &r : report.records) {
    const auto &info = vm::scenario_info(r.scenario);
    EXPECT_EQ(r.seal_mode.has_value(), info.seal_sensitive) << vm::scenario_key(r.scenario);
    EXPECT_EQ(r.opt_level.has_value(), info.opt_sensitive) << vm::scenario_key(r.scenario);
  }
}

TEST(ReportTest, OrderedByScenarioThenMode) {
  const Report report = run(everything());
  for (size_t i = 1; i < report.records.size(); ++i) {
    const RunRecord &a = report.records[i - 1];
    const RunRecord &b = report.records[i];
    EXPECT_LE(static_cast<int>(a.scenario), static_cast<int>(b.scenario));
    if (a.scenario == b.scenario) {
      EXPECT_LE(static_cast<int>(a.mode), static_cast<int>(b.mode));
    }
  }
}

TEST(ReportTest, ExpectedCorruptionPasses) {
  RunSpec spec;
  spec.scenarios = {vm::ScenarioId::kS4};
  spec.modes = {vm::Variant::kBuggy};
  const Report report = run(spec);
  ASSERT_EQ(report.records.size(), 1u);
  EXPECT_EQ(report.records[0].outcome.kind, vm::OutcomeKind::kCorrupt);
  EXPECT_TRUE(report.records[0].pass);
  const auto json = to_json(report);
  EXPECT_EQ(json["records"][0]["outcome"]["kind"], "corrupt");
  EXPECT_EQ(json["records"][0]["pass"], true);
  EXPECT_TRUE(json["records"][0]["seal_mode"].is_null());
  EXPECT_TRUE(json["records"][0]["opt_level"].is_null());
}

TEST(ReportTest, JsonSchemaFields) {
  const auto json = to_json(run(everything()));
  ASSERT_TRUE(json.contains("records"));
  for (const auto &rec : json["records"]) {
    for (const char *key : {"scenario", "mode", "seal_mode", "opt_level", "outcome", "pass"}) {
      EXPECT_TRUE(rec.contains(key)) << key;
    }
    for (const char *key : {"kind", "fault", "expected", "actual", "detail"}) {
      EXPECT_TRUE(rec["outcome"].contains(key)) << key;
    }
  }
  EXPECT_EQ(json["summary"]["total"], 34);
}

TEST(ReportTest, JsonRoundTrip) {
  for (uint64_t seed : {0ull, 1ull, 99ull}) {
    const Report report = run(everything(seed));
    const Report back = report_from_json(nlohmann::json::parse(to_json(report).dump()));
    EXPECT_EQ(back, report);
  }
}

TEST(ReportTest, MalformedJsonIsRejected) {
  auto json = to_json(run(everything()));
  json["records"][0]["scenario"] = "S99";
  EXPECT_ANY_THROW(report_from_json(json));
}

TEST(ReportTest, ExitStatusReflectsEveryRecord) {
  Report report = run(everything());
  ASSERT_EQ(exit_status(report), 0);
  for (size_t i = 0; i < report.records.size(); ++i) {
    Report broken = report;
    broken.records[i].pass = false;
    EXPECT_EQ(exit_status(broken), 1) << i;
  }
}

TEST(ReportTest, TextFormats) {
  const std::string text = format_text(run(everything()));
  EXPECT_NE(text.find("34/34 passed"), std::string::npos);
  const std::string list = catalogue_text();
  EXPECT_NE(list.find("invalid derived pointer"), std::string::npos);
  EXPECT_NE(list.find("fault=SealFault invalidate=ok"), std::string::npos);
  EXPECT_EQ(list, catalogue_text());
  EXPECT_EQ(catalogue_json().size(), vm::kScenarioCount);
}

}  // namespace
}  // namespace capsim::harness
