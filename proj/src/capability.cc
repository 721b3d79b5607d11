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

#include "capsim/capability.h"

#include <cstdio>
#include <stdexcept>

namespace capsim {
namespace {

uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

Fault make_fault(FaultKind kind, std::string detail) {
  return Fault{kind, std::move(detail)};
}

}  // namespace

std::string hex(uint64_t value) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "0x%llx",
                static_cast<unsigned long long>(value));
  return buf;
}

std::string hex(Top value) {
  if (value >> 64 == 0) return hex(static_cast<uint64_t>(value));
  char buf[40];
  std::snprintf(buf, sizeof(buf), "0x%llx%016llx",
                static_cast<unsigned long long>(value >> 64),
                static_cast<unsigned long long>(value));
  return buf;
}

std::string_view permission_name(Permission perm) {
  switch (perm) {
    case Permission::kLoad:
      return "LD";
    case Permission::kStore:
      return "ST";
    case Permission::kExecute:
      return "EX";
  }
  return "?";
}

std::string PermissionSet::to_string() const {
  std::string out;
  for (Permission p :
       {Permission::kLoad, Permission::kStore, Permission::kExecute}) {
    if (!contains(p)) continue;
    if (!out.empty()) out += '|';
    out += permission_name(p);
  }
  return out.empty() ? "-" : out;
}

std::string_view seal_mode_name(SealSemanticsMode mode) {
  return mode == SealSemanticsMode::kFaultOnModify ? "fault" : "invalidate";
}

std::array<uint8_t, kCapabilitySize> Capability::bit_pattern() const {
  // The high word packs perms and seal state with a digest of the exact
  // bounds; the authoritative metadata lives beside the tag bit.
  const uint64_t digest =
      mix64(base ^ mix64(static_cast<uint64_t>(top)) ^
            (static_cast<uint64_t>(top >> 64) << 63));
  const uint64_t meta = uint64_t{perms.raw()} |
                        (uint64_t{sealed() ? 1u : 0u} << 3) | (digest << 4);
  std::array<uint8_t, kCapabilitySize> out{};
  for (int i = 0; i < 8; ++i) {
    out[i] = static_cast<uint8_t>(address >> (8 * i));
    out[8 + i] = static_cast<uint8_t>(meta >> (8 * i));
  }
  return out;
}

std::string to_string(const Capability &cap) {
  std::string out = cap.tag ? "cap{" : "untagged{";
  out += "addr=" + hex(cap.address) + " [" + hex(cap.base) + "," +
         hex(cap.top) + ") " + cap.perms.to_string();
  if (cap.sealed()) out += " sentry";
  out += "}";
  return out;
}

std::ostream &operator<<(std::ostream &os, const Capability &cap) {
  return os << to_string(cap);
}

Capability make_root(Addr base, uint64_t length, PermissionSet perms) {
  const Top top = Top{base} + length;
  if (top > kAddressSpaceTop) {
    throw std::invalid_argument("make_root: base + length exceeds 2^64");
  }
  Capability cap;
  cap.tag = true;
  cap.address = base;
  cap.base = base;
  cap.top = top;
  cap.perms = perms;
  return cap;
}

Status check_access(const Capability &cap, Permission kind, uint64_t size) {
  if (size == 0) throw std::invalid_argument("check_access: size must be >= 1");
  if (!cap.tag) {
    return make_fault(FaultKind::kTag,
                      "capability tag fault at " + hex(cap.address));
  }
  if (cap.sealed()) {
    return make_fault(FaultKind::kSeal, "dereference of sealed capability at " +
                                            hex(cap.address));
  }
  if (!cap.perms.contains(kind)) {
    return make_fault(FaultKind::kPermission,
                      std::string("missing ") +
                          std::string(permission_name(kind)) + " permission (" +
                          cap.perms.to_string() + ")");
  }
  if (!cap.covers(cap.address, size)) {
    return make_fault(FaultKind::kBounds,
                      "access [" + hex(cap.address) + "," +
                          hex(Top{cap.address} + size) + ") outside [" +
                          hex(cap.base) + "," + hex(cap.top) + ")");
  }
  return ok_status();
}

FaultOr<Capability> CapabilityModel::modify_sealed(const Capability &original,
                                                   Capability requested,
                                                   std::string_view op) const {
  if (mode_ == SealSemanticsMode::kFaultOnModify) {
    return make_fault(FaultKind::kSeal, std::string(op) +
                                            " on sealed capability at " +
                                            hex(original.address));
  }
  requested.tag = false;
  return requested;
}

FaultOr<Capability> CapabilityModel::set_bounds(const Capability &cap,
                                                Addr new_base,
                                                uint64_t new_length) const {
  Capability out = cap;
  out.address = new_base;
  out.base = new_base;
  out.top = Top{new_base} + new_length;
  if (cap.tag && cap.sealed()) return modify_sealed(cap, out, "set_bounds");
  out.tag = cap.tag && new_base >= cap.base && out.top <= cap.top;
  return out;
}

FaultOr<Capability> CapabilityModel::restrict_perms(
    const Capability &cap, PermissionSet perms) const {
  Capability out = cap;
  out.perms = perms;
  if (cap.tag && cap.sealed()) return modify_sealed(cap, out, "restrict_perms");
  out.tag = cap.tag && perms.is_subset_of(cap.perms);
  return out;
}

FaultOr<Capability> CapabilityModel::set_address(const Capability &cap,
                                                 Addr addr) const {
  Capability out = cap;
  out.address = addr;
  if (cap.tag && cap.sealed()) return modify_sealed(cap, out, "set_address");
  return out;
}

Capability CapabilityModel::seal_entry(const Capability &cap) const {
  Capability out = cap;
  if (!cap.tag || cap.sealed() || !cap.perms.contains(Permission::kExecute)) {
    out.tag = false;
    return out;
  }
  out.seal = SealState::kSealedEntry;
  return out;
}

}  // namespace capsim
