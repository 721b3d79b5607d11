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

#ifndef CAPSIM_CAPABILITY_H_
#define CAPSIM_CAPABILITY_H_

#include <array>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

#include "capsim/fault.h"

// Capability values and their derivation rules. Bounds are held exactly
// (base and an exclusive 65-bit top); no compression is modelled.

namespace capsim {

using Addr = uint64_t;
// Exclusive upper bound. Needs 65 bits so a capability can cover the whole
// 64-bit address space.
__extension__ typedef unsigned __int128 Top;

inline constexpr Top kAddressSpaceTop = Top{1} << 64;
inline constexpr uint64_t kCapabilitySize = 16;

enum class Permission : uint8_t {
  kLoad = 1u << 0,
  kStore = 1u << 1,
  kExecute = 1u << 2,
};

std::string_view permission_name(Permission perm);

class PermissionSet {
 public:
  constexpr PermissionSet() = default;
  constexpr PermissionSet(std::initializer_list<Permission> perms) {
    for (Permission p : perms) bits_ |= static_cast<uint8_t>(p);
  }

  static constexpr PermissionSet all() {
    return {Permission::kLoad, Permission::kStore, Permission::kExecute};
  }
  static constexpr PermissionSet none() { return {}; }
  // Bits outside the three modelled permissions are dropped.
  static constexpr PermissionSet from_raw(uint8_t raw) {
    PermissionSet s;
    s.bits_ = raw & all().bits_;
    return s;
  }

  constexpr uint8_t raw() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(Permission p) const {
    return (bits_ & static_cast<uint8_t>(p)) != 0;
  }
  constexpr bool is_subset_of(PermissionSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr PermissionSet operator|(PermissionSet o) const {
    return from_raw(bits_ | o.bits_);
  }
  constexpr PermissionSet operator&(PermissionSet o) const {
    return from_raw(bits_ & o.bits_);
  }
  constexpr PermissionSet without(PermissionSet o) const {
    return from_raw(bits_ & ~o.bits_);
  }

  constexpr bool operator==(const PermissionSet &) const = default;

  // "LD|ST|EX" style; "-" for the empty set.
  std::string to_string() const;

 private:
  uint8_t bits_ = 0;
};

enum class SealState : uint8_t {
  kUnsealed,
  kSealedEntry,
};

// What happens when software tries to change a sealed capability. Older
// CHERI releases trap; newer ones clear the tag instead.
enum class SealSemanticsMode : uint8_t {
  kFaultOnModify,
  kInvalidateOnModify,
};

std::string_view seal_mode_name(SealSemanticsMode mode);

struct Capability {
  bool tag = false;
  Addr address = 0;
  Addr base = 0;
  Top top = 0;
  PermissionSet perms;
  SealState seal = SealState::kUnsealed;

  bool sealed() const { return seal == SealState::kSealedEntry; }
  Top length() const { return top - base; }

  // True when [addr, addr + size) lies inside [base, top).
  bool covers(Addr addr, uint64_t size) const {
    return addr >= base && Top{addr} + size <= top;
  }

  // True when [base, top) shares at least one byte with [begin, end).
  bool intersects(Addr begin, Top end) const {
    return base < end && Top{begin} < top;
  }

  // The 128-bit in-memory image: the address in the low eight bytes
  // (little-endian), a metadata word in the high eight.
  std::array<uint8_t, kCapabilitySize> bit_pattern() const;

  bool operator==(const Capability &) const = default;
};

std::string to_string(const Capability &cap);
std::ostream &operator<<(std::ostream &os, const Capability &cap);

// Root constructor: the only source of tagged capabilities. Throws
// std::invalid_argument when base + length exceeds 2^64.
Capability make_root(Addr base, uint64_t length, PermissionSet perms);

// Checks tag, seal, permission, then bounds; reports the first failure.
// `size` must be at least one byte.
Status check_access(const Capability &cap, Permission kind, uint64_t size);

// Derivation operations. Holds the seal-semantics setting of one simulator
// instance; immutable after construction.
class CapabilityModel {
 public:
  explicit CapabilityModel(SealSemanticsMode mode) : mode_(mode) {}

  SealSemanticsMode seal_mode() const { return mode_; }

  // Narrows bounds and moves the address to new_base. Requests that would
  // widen bounds produce an untagged capability rather than a fault.
  FaultOr<Capability> set_bounds(const Capability &cap, Addr new_base,
                                 uint64_t new_length) const;

  FaultOr<Capability> restrict_perms(const Capability &cap,
                                     PermissionSet perms) const;

  // Out-of-bounds addresses keep the tag; bounds are enforced on access.
  FaultOr<Capability> set_address(const Capability &cap, Addr addr) const;

  // Produces a sealed-entry capability; inputs that are untagged, already
  // sealed or not executable yield an untagged copy.
  Capability seal_entry(const Capability &cap) const;

 private:
  // Applies the seal-semantics mode to a modification of tagged sealed
  // `original` that would have produced `requested`.
  FaultOr<Capability> modify_sealed(const Capability &original,
                                    Capability requested,
                                    std::string_view op) const;

  SealSemanticsMode mode_;
};

std::string hex(uint64_t value);
std::string hex(Top value);

}  // namespace capsim

#endif  // CAPSIM_CAPABILITY_H_
