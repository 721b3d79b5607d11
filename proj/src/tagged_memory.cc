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

#include "capsim/tagged_memory.h"

#include <algorithm>
#include <cstring>
#include <stdexcept>
#include <string>

namespace capsim {
namespace {

constexpr PermissionSet kAccessPerms = {Permission::kLoad, Permission::kStore};

bool lacks_access(PermissionSet perms) {
  return !kAccessPerms.is_subset_of(perms);
}

}  // namespace

TaggedMemory::TaggedMemory(uint64_t size)
    : data_(size, 0),
      tags_(size / kGranuleSize, 0),
      caps_(size / kGranuleSize),
      page_perms_(size / kPageSize, PermissionSet::all()),
      page_stripped_(size / kPageSize, 0) {
  if (size == 0 || size % kPageSize != 0) {
    throw std::invalid_argument("TaggedMemory: size must be a multiple of " +
                                std::to_string(kPageSize));
  }
}

Status TaggedMemory::check(const Capability &authority, Addr addr,
                           uint64_t length, Permission kind) const {
  Capability at = authority;
  at.address = addr;
  CAPSIM_RETURN_IF_ERROR(check_access(at, kind, length));
  if (Top{addr} + length > data_.size()) {
    return Fault{FaultKind::kBounds,
                 "access at " + hex(addr) + " outside simulated memory"};
  }
  for (uint64_t page = addr / kPageSize; page <= (addr + length - 1) / kPageSize;
       ++page) {
    if (!page_perms_[page].contains(kind)) {
      return Fault{FaultKind::kPermission,
                   "page " + hex(page * kPageSize) + " lacks " +
                       std::string(permission_name(kind)) + " permission"};
    }
  }
  return ok_status();
}

void TaggedMemory::clear_tags(Addr addr, uint64_t length) {
  for (uint64_t g = addr / kGranuleSize; g <= (addr + length - 1) / kGranuleSize;
       ++g) {
    tags_[g] = 0;
  }
}

Status TaggedMemory::store_cap(const Capability &authority, Addr addr,
                               const Capability &value) {
  if (addr % kGranuleSize != 0) {
    return Fault{FaultKind::kAlignment,
                 "capability store at unaligned " + hex(addr)};
  }
  CAPSIM_RETURN_IF_ERROR(
      check(authority, addr, kCapabilitySize, Permission::kStore));
  const auto pattern = value.bit_pattern();
  std::copy(pattern.begin(), pattern.end(), data_.begin() + addr);
  const uint64_t g = addr / kGranuleSize;
  tags_[g] = value.tag ? 1 : 0;
  caps_[g] = value;
  return ok_status();
}

FaultOr<Capability> TaggedMemory::load_cap(const Capability &authority,
                                           Addr addr) const {
  if (addr % kGranuleSize != 0) {
    return Fault{FaultKind::kAlignment,
                 "capability load at unaligned " + hex(addr)};
  }
  CAPSIM_RETURN_IF_ERROR(
      check(authority, addr, kCapabilitySize, Permission::kLoad));
  const uint64_t g = addr / kGranuleSize;
  if (tags_[g]) return caps_[g];
  // A plain integer in capability-sized storage.
  Capability out;
  for (int i = 0; i < 8; ++i) {
    out.address |= uint64_t{data_[addr + i]} << (8 * i);
  }
  return out;
}

Status TaggedMemory::store_bytes(const Capability &authority, Addr addr,
                                 std::span<const uint8_t> bytes) {
  if (bytes.empty()) return ok_status();
  CAPSIM_RETURN_IF_ERROR(
      check(authority, addr, bytes.size(), Permission::kStore));
  std::copy(bytes.begin(), bytes.end(), data_.begin() + addr);
  clear_tags(addr, bytes.size());
  return ok_status();
}

FaultOr<std::vector<uint8_t>> TaggedMemory::load_bytes(
    const Capability &authority, Addr addr, uint64_t length) const {
  if (length == 0) return std::vector<uint8_t>{};
  CAPSIM_RETURN_IF_ERROR(check(authority, addr, length, Permission::kLoad));
  return std::vector<uint8_t>(data_.begin() + addr,
                              data_.begin() + addr + length);
}

Status TaggedMemory::store_u64(const Capability &authority, Addr addr,
                               uint64_t value) {
  std::array<uint8_t, 8> bytes;
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<uint8_t>(value >> (8 * i));
  return store_bytes(authority, addr, bytes);
}

FaultOr<uint64_t> TaggedMemory::load_u64(const Capability &authority,
                                         Addr addr) const {
  CAPSIM_ASSIGN_OR_RETURN(auto bytes, load_bytes(authority, addr, 8));
  uint64_t value = 0;
  for (int i = 0; i < 8; ++i) value |= uint64_t{bytes[i]} << (8 * i);
  return value;
}

Status TaggedMemory::copy(const Capability &authority, Addr dst, Addr src,
                          uint64_t length) {
  if (dst % kGranuleSize != 0 || src % kGranuleSize != 0 ||
      length % kGranuleSize != 0) {
    return Fault{FaultKind::kAlignment, "unaligned capability copy"};
  }
  if (length == 0) return ok_status();
  CAPSIM_RETURN_IF_ERROR(check(authority, src, length, Permission::kLoad));
  CAPSIM_RETURN_IF_ERROR(check(authority, dst, length, Permission::kStore));
  std::memmove(data_.data() + dst, data_.data() + src, length);
  const uint64_t n = length / kGranuleSize;
  const uint64_t gs = src / kGranuleSize;
  const uint64_t gd = dst / kGranuleSize;
  if (gd < gs) {
    for (uint64_t i = 0; i < n; ++i) {
      tags_[gd + i] = tags_[gs + i];
      caps_[gd + i] = caps_[gs + i];
    }
  } else {
    for (uint64_t i = n; i-- > 0;) {
      tags_[gd + i] = tags_[gs + i];
      caps_[gd + i] = caps_[gs + i];
    }
  }
  return ok_status();
}

void TaggedMemory::mprotect(const PageProtRequest &request) {
  if (request.begin % kPageSize != 0 || request.length % kPageSize != 0 ||
      Top{request.begin} + request.length > data_.size()) {
    throw std::invalid_argument("mprotect: range must be page aligned and "
                                "inside memory");
  }
  for (uint64_t page = request.begin / kPageSize;
       page < (request.begin + request.length) / kPageSize; ++page) {
    const PermissionSet before = page_perms_[page];
    const PermissionSet gained = request.perms.without(before);
    const bool restores = !(gained & kAccessPerms).empty();
    if (restores && page_stripped_[page] && !request.prot_cap) {
      std::fill_n(tags_.begin() + page * (kPageSize / kGranuleSize),
                  kPageSize / kGranuleSize, 0);
    }
    if (lacks_access(request.perms) && !lacks_access(before)) {
      page_stripped_[page] = 1;
    } else if (restores) {
      page_stripped_[page] = lacks_access(request.perms) ? 1 : 0;
    }
    page_perms_[page] = request.perms;
  }
}

PermissionSet TaggedMemory::page_perms(Addr addr) const {
  return page_perms_.at(addr / kPageSize);
}

}  // namespace capsim
