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

#ifndef CAPSIM_CAPINT_H_
#define CAPSIM_CAPINT_H_

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "capsim/capability.h"
#include "capsim/fault.h"

// Capability-typed integers: the CHERI C model of (u)intptr_t. Arithmetic
// only ever touches the 64-bit address; the metadata half is padding.

namespace capsim {

// How an integer word is laid out in the simulated program.
//   kPaddedCap: capability-typed, 16 bytes of storage, 64 value bits.
//   kExact64:   exact-width, 8 bytes of storage, 64 value bits.
enum class WordModel : uint8_t {
  kPaddedCap,
  kExact64,
};

constexpr unsigned storage_bytes(WordModel model) {
  return model == WordModel::kPaddedCap ? 16 : 8;
}
constexpr unsigned storage_bits(WordModel model) {
  return storage_bytes(model) * 8;
}
constexpr unsigned value_bits(WordModel) { return 64; }

std::string_view word_model_name(WordModel model);

class CapInt {
 public:
  CapInt() = default;
  explicit CapInt(Capability cap) : cap_(cap) {}

  const Capability &capability() const { return cap_; }
  Addr address() const { return cap_.address; }
  bool tagged() const { return cap_.tag; }
  bool sealed() const { return cap_.sealed(); }

  bool operator==(const CapInt &) const = default;

 private:
  Capability cap_;
};

enum class BinOp : uint8_t { kAdd, kSub, kAnd, kOr, kXor, kShl, kShr };

std::string_view binop_name(BinOp op);

// Shift amounts at or beyond this width produce the sentinel 0.
inline constexpr unsigned kCapIntValueWidth = 64;

// The 64-bit value semantics shared by capability and plain arithmetic.
// Shifts by >= 64 return 0 instead of being undefined.
uint64_t apply_binop(uint64_t lhs, uint64_t rhs, BinOp op);

using Operand = std::variant<CapInt, uint64_t>;

enum class Advisory : uint8_t {
  // Both operands were capabilities; metadata came from the left one.
  kAmbiguousProvenance,
};

struct BinopResult {
  CapInt value;
  std::vector<Advisory> advisories;
};

// Binary operation with at least one capability-typed operand. The result
// inherits the metadata of the capability operand (the left one if both
// are), which is an address modification of that capability: a sealed
// source faults or loses its tag according to the model's seal mode.
// Throws std::invalid_argument if neither operand is a CapInt.
FaultOr<BinopResult> capint_binop(const CapabilityModel &model,
                                  const Operand &lhs, const Operand &rhs,
                                  BinOp op);

// Convenience wrapper that drops the advisories.
FaultOr<CapInt> capint_apply(const CapabilityModel &model, const Operand &lhs,
                             const Operand &rhs, BinOp op);

// Cast to an exact-width integer. Never faults, even on sealed values.
uint64_t capint_to_int64(const CapInt &value);

// Cast from a plain integer: always untagged with empty bounds.
CapInt int64_to_capint(uint64_t value);

}  // namespace capsim

#endif  // CAPSIM_CAPINT_H_
