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

#ifndef CAPSIM_CAP_ALLOCATOR_H_
#define CAPSIM_CAP_ALLOCATOR_H_

#include <compare>
#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include "capsim/capability.h"
#include "capsim/fault.h"
#include "capsim/tagged_memory.h"

namespace capsim {

inline constexpr uint64_t kAllocAlignment = kGranuleSize;

constexpr uint64_t round_up_alloc(uint64_t n) {
  return (n + kAllocAlignment - 1) / kAllocAlignment * kAllocAlignment;
}

struct Region {
  Addr base = 0;
  uint64_t length = 0;

  Top end() const { return Top{base} + length; }
  bool overlaps(const Region &o) const {
    return Top{base} < o.end() && Top{o.base} < end();
  }
  auto operator<=>(const Region &) const = default;
};

// Allocator errors are software errors, distinct from hardware faults.
enum class AllocError : uint8_t {
  kOutOfMemory,
  kDoubleFree,
  kUnknownBase,
  kZeroSize,
};

std::string_view alloc_error_name(AllocError error);

template <typename T>
using AllocOr = Expected<T, AllocError>;

// First-fit heap over a TaggedMemory range. Freed regions sit in
// quarantine until revoke() sweeps memory and clears every stored
// capability that reaches into them.
class CapAllocator {
 public:
  // `arena` must be a tagged, unsealed LOAD|STORE capability whose bounds
  // are granule aligned and lie inside `memory`. The memory must outlive
  // the allocator.
  CapAllocator(TaggedMemory &memory, Capability arena);

  CapAllocator(const CapAllocator &) = delete;
  CapAllocator &operator=(const CapAllocator &) = delete;

  // Bounds are exactly [b, b + round_up_alloc(n)).
  AllocOr<Capability> malloc(uint64_t n);
  // Moves the allocation whose base is cap.base into quarantine.
  AllocOr<Region> free(const Capability &cap);
  // Returns the number of capability tags cleared.
  uint64_t revoke();
  AllocOr<Capability> realloc(const Capability &old, uint64_t n);

  // True if `cap` was obtained at `observed_epoch` or earlier and reaches
  // into a region revoked since. Lets drivers re-check capabilities held
  // outside simulated memory.
  bool is_stale(const Capability &cap, uint64_t observed_epoch) const;

  const Capability &arena() const { return arena_; }
  uint64_t epoch() const { return epoch_; }
  std::vector<Region> live() const;
  std::vector<Region> free_list() const;
  std::vector<Region> quarantine() const;

 private:
  Capability derive(Addr base, uint64_t length, Addr address) const;
  void insert_free(Region region);

  TaggedMemory &memory_;
  Capability arena_;
  // Keyed by base.
  std::map<Addr, uint64_t> live_;
  std::map<Addr, uint64_t> free_;
  std::map<Addr, uint64_t> quarantine_;
  struct Revoked {
    Region region;
    uint64_t epoch;
  };
  std::vector<Revoked> revoked_;
  uint64_t epoch_ = 0;
};

}  // namespace capsim

#endif  // CAPSIM_CAP_ALLOCATOR_H_
