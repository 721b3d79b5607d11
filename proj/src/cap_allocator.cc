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

#include "capsim/cap_allocator.h"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace capsim {
namespace {

std::vector<Region> to_regions(const std::map<Addr, uint64_t> &m) {
  std::vector<Region> out;
  out.reserve(m.size());
  for (const auto &[base, length] : m) out.push_back({base, length});
  return out;
}

}  // namespace

std::string_view alloc_error_name(AllocError error) {
  switch (error) {
    case AllocError::kOutOfMemory:
      return "out of memory";
    case AllocError::kDoubleFree:
      return "double free";
    case AllocError::kUnknownBase:
      return "unknown allocation base";
    case AllocError::kZeroSize:
      return "zero-size request";
  }
  return "?";
}

CapAllocator::CapAllocator(TaggedMemory &memory, Capability arena)
    : memory_(memory), arena_(arena) {
  if (!arena.tag || arena.sealed() ||
      !PermissionSet({Permission::kLoad, Permission::kStore})
           .is_subset_of(arena.perms) ||
      arena.base % kAllocAlignment != 0 ||
      arena.length() % kAllocAlignment != 0 || arena.top > memory.size()) {
    throw std::invalid_argument("CapAllocator: unusable arena " +
                                to_string(arena));
  }
  if (arena.length() > 0) {
    free_.emplace(arena.base, static_cast<uint64_t>(arena.length()));
  }
}

Capability CapAllocator::derive(Addr base, uint64_t length,
                                Addr address) const {
  // The arena is unsealed, so the seal mode never comes into play.
  const CapabilityModel model(SealSemanticsMode::kFaultOnModify);
  Capability cap = model.set_bounds(arena_, base, length).value();
  cap.address = address;
  return cap;
}

void CapAllocator::insert_free(Region region) {
  auto [it, inserted] = free_.emplace(region.base, region.length);
  if (!inserted) throw std::logic_error("CapAllocator: free list corrupted");
  auto next = std::next(it);
  if (next != free_.end() && it->first + it->second == next->first) {
    it->second += next->second;
    free_.erase(next);
  }
  if (it != free_.begin()) {
    auto prev = std::prev(it);
    if (prev->first + prev->second == it->first) {
      prev->second += it->second;
      free_.erase(it);
    }
  }
}

AllocOr<Capability> CapAllocator::malloc(uint64_t n) {
  if (n == 0) return AllocError::kZeroSize;
  const uint64_t length = round_up_alloc(n);
  if (length < n) return AllocError::kOutOfMemory;
  for (auto it = free_.begin(); it != free_.end(); ++it) {
    if (it->second < length) continue;
    const Addr base = it->first;
    const uint64_t rest = it->second - length;
    free_.erase(it);
    if (rest > 0) free_.emplace(base + length, rest);
    live_.emplace(base, length);
    return derive(base, length, base);
  }
  return AllocError::kOutOfMemory;
}

AllocOr<Region> CapAllocator::free(const Capability &cap) {
  auto it = live_.find(cap.base);
  if (it == live_.end()) {
    return quarantine_.count(cap.base) ? AllocError::kDoubleFree
                                       : AllocError::kUnknownBase;
  }
  const Region region{it->first, it->second};
  live_.erase(it);
  quarantine_.emplace(region.base, region.length);
  return region;
}

uint64_t CapAllocator::revoke() {
  const std::vector<Region> doomed = to_regions(quarantine_);
  uint64_t cleared = 0;
  if (!doomed.empty()) {
    for (uint64_t g = 0; g < memory_.granule_count(); ++g) {
      if (!memory_.granule_tagged(g)) continue;
      const Capability &cap = memory_.granule_capability(g);
      const bool hit = std::any_of(
          doomed.begin(), doomed.end(),
          [&](const Region &r) { return cap.intersects(r.base, r.end()); });
      if (hit) {
        memory_.clear_granule_tag(g);
        ++cleared;
      }
    }
  }
  ++epoch_;
  for (const Region &r : doomed) {
    revoked_.push_back({r, epoch_});
    insert_free(r);
  }
  quarantine_.clear();
  return cleared;
}

AllocOr<Capability> CapAllocator::realloc(const Capability &old, uint64_t n) {
  auto it = live_.find(old.base);
  if (it == live_.end()) return AllocError::kUnknownBase;
  if (n == 0) return AllocError::kZeroSize;
  const Addr base = it->first;
  const uint64_t current = it->second;
  const uint64_t length = round_up_alloc(n);

  if (length <= current) {
    // Shrinking hands the tail to quarantine: the old capability still
    // reaches it.
    if (length < current) {
      it->second = length;
      quarantine_.emplace(base + length, current - length);
    }
    return derive(base, length, old.address);
  }

  auto next = free_.find(base + current);
  const uint64_t extra = length - current;
  if (next != free_.end() && next->second >= extra) {
    const uint64_t rest = next->second - extra;
    free_.erase(next);
    if (rest > 0) free_.emplace(base + length, rest);
    it->second = length;
    return derive(base, length, old.address);
  }

  auto moved = malloc(n);
  if (!moved.ok()) return moved;
  Status copied = memory_.copy(arena_, moved.value().base, base, current);
  if (!copied.ok()) {
    throw std::logic_error("CapAllocator: realloc copy failed: " +
                           copied.error().detail);
  }
  live_.erase(base);
  quarantine_.emplace(base, current);
  return moved;
}

bool CapAllocator::is_stale(const Capability &cap,
                            uint64_t observed_epoch) const {
  return std::any_of(revoked_.begin(), revoked_.end(), [&](const Revoked &r) {
    return r.epoch > observed_epoch &&
           cap.intersects(r.region.base, r.region.end());
  });
}

std::vector<Region> CapAllocator::live() const { return to_regions(live_); }
std::vector<Region> CapAllocator::free_list() const {
  return to_regions(free_);
}
std::vector<Region> CapAllocator::quarantine() const {
  return to_regions(quarantine_);
}

}  // namespace capsim
