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

#ifndef CAPSIM_TAGGED_MEMORY_H_
#define CAPSIM_TAGGED_MEMORY_H_

#include <cstdint>
#include <span>
#include <vector>

#include "capsim/capability.h"
#include "capsim/fault.h"

namespace capsim {

inline constexpr uint64_t kGranuleSize = kCapabilitySize;
inline constexpr uint64_t kPageSize = 4096;

struct PageProtRequest {
  Addr begin = 0;  // page aligned
  uint64_t length = 0;  // multiple of kPageSize
  PermissionSet perms;
  // Keep capability tags valid when access is restored.
  bool prot_cap = false;
};

// Flat, zero-initialised memory starting at address 0. Every 16-byte granule
// has a validity tag; every 4 KiB page has an access permission set.
//
// All accessors take an authorising capability. Capability checks run
// first, then the simulated-memory range, then page permissions.
// A TaggedMemory must only be used from one thread at a time.
class TaggedMemory {
 public:
  // `size` must be a non-zero multiple of kPageSize.
  explicit TaggedMemory(uint64_t size);

  uint64_t size() const { return data_.size(); }

  Status store_cap(const Capability &authority, Addr addr,
                   const Capability &value);
  FaultOr<Capability> load_cap(const Capability &authority, Addr addr) const;
  // Uses the capability's own address as the target.
  Status store_cap(const Capability &ptr, const Capability &value) {
    return store_cap(ptr, ptr.address, value);
  }
  FaultOr<Capability> load_cap(const Capability &ptr) const {
    return load_cap(ptr, ptr.address);
  }

  // Byte stores clear the tag of every granule they touch.
  Status store_bytes(const Capability &authority, Addr addr,
                     std::span<const uint8_t> bytes);
  FaultOr<std::vector<uint8_t>> load_bytes(const Capability &authority,
                                           Addr addr, uint64_t length) const;

  // Little-endian 64-bit helpers over store_bytes/load_bytes.
  Status store_u64(const Capability &authority, Addr addr, uint64_t value);
  FaultOr<uint64_t> load_u64(const Capability &authority, Addr addr) const;

  // Tag-preserving granule copy (memmove semantics). `dst`, `src` and
  // `length` must be granule aligned.
  Status copy(const Capability &authority, Addr dst, Addr src,
              uint64_t length);

  // Sets the page permissions of the range. Restoring LOAD or STORE on a
  // page that previously lost either clears every tag on the page, unless
  // `prot_cap` is set. Throws std::invalid_argument for a misaligned or
  // out-of-range request.
  void mprotect(const PageProtRequest &request);
  PermissionSet page_perms(Addr addr) const;

  // Raw inspection for sweeps and test oracles; bypasses all checks.
  uint64_t granule_count() const { return tags_.size(); }
  bool granule_tagged(uint64_t granule) const { return tags_[granule] != 0; }
  const Capability &granule_capability(uint64_t granule) const {
    return caps_[granule];
  }
  void clear_granule_tag(uint64_t granule) { tags_[granule] = 0; }
  std::span<const uint8_t> raw_bytes() const { return data_; }

 private:
  Status check(const Capability &authority, Addr addr, uint64_t length,
               Permission kind) const;
  void clear_tags(Addr addr, uint64_t length);

  std::vector<uint8_t> data_;
  std::vector<uint8_t> tags_;
  std::vector<Capability> caps_;
  std::vector<PermissionSet> page_perms_;
  // Set once a page has lost LOAD or STORE and not yet regained it.
  std::vector<uint8_t> page_stripped_;
};

}  // namespace capsim

#endif  // CAPSIM_TAGGED_MEMORY_H_
