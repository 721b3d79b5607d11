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

#include "capsim/fault.h"

#include <array>

namespace capsim {
namespace {

constexpr std::array<std::string_view, 5> kFaultNames = {
    "TagFault", "SealFault", "PermissionFault", "BoundsFault",
    "AlignmentFault"};

}  // namespace

std::string_view fault_kind_name(FaultKind kind) {
  return kFaultNames[static_cast<size_t>(kind)];
}

std::optional<FaultKind> parse_fault_kind(std::string_view name) {
  for (size_t i = 0; i < kFaultNames.size(); ++i) {
    if (kFaultNames[i] == name) return static_cast<FaultKind>(i);
  }
  return std::nullopt;
}

std::ostream &operator<<(std::ostream &os, const Fault &fault) {
  os << fault_kind_name(fault.kind);
  if (!fault.detail.empty()) os << ": " << fault.detail;
  return os;
}

}  // namespace capsim
