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

// capsim: runs the VM pitfall scenarios against the capability simulator.
//
//   capsim list [--format text|json]
//   capsim run <S1..S12|all>... [--mode buggy|fixed|both]
//       [--seal-semantics fault|invalidate|both] [--opt-level O0|O1|both]
//       [--seed N] [--format text|json] [--out PATH]
//
// Exit status: 0 all runs matched expectations, 1 some did not, 2 usage
// error, 3 internal simulator error.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "capsim/harness/report.h"
#include "capsim/vm/scenario.h"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

using capsim::SealSemanticsMode;
using capsim::harness::OutputFormat;
namespace vm = capsim::vm;

int emit(const std::string &text, const std::string &out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "capsim: cannot open " << out_path << " for writing\n";
    return kExitInternal;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Capability memory model simulator: VM pitfall scenarios"};
  app.require_subcommand(1);

  std::string format_name = "text";

  CLI::App *list = app.add_subcommand("list", "Print the scenario catalogue");
  list->add_option("--format", format_name, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  CLI::App *run = app.add_subcommand("run", "Run scenarios and check outcomes");
  std::vector<std::string> ids;
  std::string mode = "both";
  std::string seal = "both";
  std::string opt = "both";
  uint64_t seed = 0;
  std::string out_path;
  run->add_option("ids", ids, "Scenario ids (S1..S12) or 'all'")->required();
  run->add_option("--mode", mode, "buggy, fixed or both")
      ->check(CLI::IsMember({"buggy", "fixed", "both"}));
  run->add_option("--seal-semantics", seal, "fault, invalidate or both")
      ->check(CLI::IsMember({"fault", "invalidate", "both"}));
  run->add_option("--opt-level", opt, "O0, O1 or both (S9 only)")
      ->check(CLI::IsMember({"O0", "O1", "both"}));
  run->add_option("--seed", seed, "Seed for randomised stack layouts");
  run->add_option("--format", format_name, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  run->add_option("--out", out_path, "Write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  const OutputFormat format =
      format_name == "json" ? OutputFormat::kJson : OutputFormat::kText;

  try {
    if (list->parsed()) {
      if (format == OutputFormat::kJson) {
        std::cout << capsim::harness::catalogue_json().dump(2) << '\n';
      } else {
        std::cout << capsim::harness::catalogue_text();
      }
      return 0;
    }

    capsim::harness::RunSpec spec;
    for (const std::string &id : ids) {
      if (id == "all") {
        spec.scenarios.assign(vm::all_scenarios().begin(),
                              vm::all_scenarios().end());
        continue;
      }
      auto parsed = vm::parse_scenario_id(id);
      if (!parsed) {
        std::cerr << "capsim: unknown scenario id '" << id
                  << "' (expected S1..S12 or all)\n";
        return kExitUsage;
      }
      spec.scenarios.push_back(*parsed);
    }
    if (mode != "both") {
      spec.modes = {mode == "buggy" ? vm::Variant::kBuggy : vm::Variant::kFixed};
    }
    if (seal != "both") {
      spec.seal_modes = {seal == "fault" ? SealSemanticsMode::kFaultOnModify
                                         : SealSemanticsMode::kInvalidateOnModify};
    }
    if (opt != "both") {
      spec.opt_levels = {opt == "O0" ? vm::OptLevel::kO0 : vm::OptLevel::kO1};
    }
    spec.seed = seed;

    const capsim::harness::Report report = capsim::harness::run(spec);
    const std::string text = format == OutputFormat::kJson
                                 ? capsim::harness::to_json(report).dump(2) + "\n"
                                 : capsim::harness::format_text(report);
    if (int rc = emit(text, out_path); rc != 0) return rc;
    return capsim::harness::exit_status(report);
  } catch (const std::exception &e) {
    std::cerr << "capsim: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
