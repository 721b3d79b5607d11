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

#ifndef CAPSIM_VM_VALUE_H_
#define CAPSIM_VM_VALUE_H_

#include <cstdint>
#include <string_view>

#include "capsim/capability.h"
#include "capsim/capint.h"

namespace capsim::vm {

// Which form of a pitfall idiom to run: the original code or the ported
// workaround.
enum class Variant : uint8_t { kBuggy, kFixed };

// Simulated compiler optimisation level. At O0 the compiler materialises
// a temporary capability for capability-typed arithmetic; at O1 and above
// it works on the address directly.
enum class OptLevel : uint8_t { kO0, kO1 };

std::string_view variant_name(Variant v);
std::string_view opt_level_name(OptLevel o);

// Low three bits of a value; all zero for heap references.
inline constexpr uint64_t kImmediateMask = 0x7;
inline constexpr uint64_t kFixnumFlag = 0x1;

// The VM's universal value: a capability-typed integer.
class VmValue {
 public:
  VmValue() = default;
  explicit VmValue(CapInt bits) : bits_(bits) {}
  explicit VmValue(const Capability &cap) : bits_(cap) {}

  // Untagged tagged-integer encoding (n << 1) | 1.
  static VmValue fixnum(int64_t n) {
    return VmValue(int64_to_capint((static_cast<uint64_t>(n) << 1) | kFixnumFlag));
  }

  const CapInt &bits() const { return bits_; }
  const Capability &capability() const { return bits_.capability(); }
  Addr address() const { return bits_.address(); }
  bool tagged() const { return bits_.tagged(); }
  bool sealed() const { return bits_.sealed(); }

  bool operator==(const VmValue &) const = default;

 private:
  CapInt bits_;
};

}  // namespace capsim::vm

#endif  // CAPSIM_VM_VALUE_H_
