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

#ifndef CAPSIM_VM_MACHINE_H_
#define CAPSIM_VM_MACHINE_H_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "capsim/cap_allocator.h"
#include "capsim/capability.h"
#include "capsim/fault.h"
#include "capsim/tagged_memory.h"
#include "capsim/vm/mark_bitmap.h"
#include "capsim/vm/value.h"

namespace capsim::vm {

// Fixed address map of a simulator instance.
namespace layout {
inline constexpr uint64_t kMemorySize = 0x40000;
// Fake code region; return addresses and routine entries point here.
inline constexpr Addr kCodeBase = 0x1000;
inline constexpr uint64_t kCodeSize = 0x4000;
inline constexpr Addr kStackBase = 0x8000;
inline constexpr uint64_t kStackSlotSize = 16;
inline constexpr uint64_t kStackSlots = 64;
// Runtime-private records (coroutine contexts and the like).
inline constexpr Addr kScratchBase = 0x9000;
inline constexpr uint64_t kScratchSize = kPageSize;
// Page the collector write-protects while it runs.
inline constexpr Addr kGuardedPageBase = 0xa000;
inline constexpr Addr kHeapBase = 0x10000;
inline constexpr uint64_t kHeapSize = 0x30000;
}  // namespace layout

inline constexpr uint64_t kHeapPageSize = 4096;
inline constexpr uint64_t kObjectSlotSize = 32;
inline constexpr size_t kObjectsPerPage = kHeapPageSize / kObjectSlotSize;

// One malloc'ed heap page of fixed-size object slots. References into the
// page carry the page-wide bounds of the malloc'ed capability.
class HeapPage {
 public:
  explicit HeapPage(Capability page);

  const Capability &capability() const { return page_; }
  Addr base() const { return page_.base; }
  bool contains(Addr addr) const { return page_.covers(addr, 1); }
  Addr object_address(size_t slot) const;
  // Slot index if `addr` is the start of an object slot.
  std::optional<size_t> slot_of(Addr addr) const;

  MarkBitmap &marks() { return marks_; }
  const MarkBitmap &marks() const { return marks_; }

 private:
  Capability page_;
  MarkBitmap marks_;
};

// Downward-growing machine stack of 16-byte slots. `bottom` is the
// exclusive high end of the region; `top` is the lowest occupied slot.
class SimStack {
 public:
  SimStack(TaggedMemory &memory, const CapabilityModel &model,
           Capability region);

  // Capability spanning the whole stack, as the stack pointer holds.
  const Capability &super_capability() const { return region_; }
  Addr top() const { return top_; }
  Addr bottom() const { return static_cast<Addr>(region_.top); }
  size_t depth() const { return (bottom() - top_) / layout::kStackSlotSize; }

  // Stores a capability (tag preserved) in a new slot.
  Status push(const Capability &value);
  Status push_value(const VmValue &value) { return push(value.capability()); }
  // Stores a plain 64-bit integer; the slot tag is clear.
  Status push_word(uint64_t word);

  // What `&local` yields for a local held in the top slot: a capability
  // bounded to that one slot.
  FaultOr<Capability> address_of_top() const;

 private:
  FaultOr<Addr> reserve_slot();

  TaggedMemory &memory_;
  const CapabilityModel &model_;
  Capability region_;
  Addr top_;
};

// One simulator instance: memory, seal semantics, heap, stack and code
// region. Not copyable or movable; scenarios build a fresh one per run.
class Vm {
 public:
  explicit Vm(SealSemanticsMode mode);

  Vm(const Vm &) = delete;
  Vm &operator=(const Vm &) = delete;

  TaggedMemory &memory() { return memory_; }
  const TaggedMemory &memory() const { return memory_; }
  const CapabilityModel &model() const { return model_; }
  CapAllocator &heap() { return heap_; }
  SimStack &stack() { return stack_; }
  const SimStack &stack() const { return stack_; }

  // Executable root over the code region.
  const Capability &code_root() const { return code_root_; }
  // Read-write root over the scratch page.
  const Capability &scratch_root() const { return scratch_root_; }
  // Read-write root over the guarded page.
  const Capability &guarded_root() const { return guarded_root_; }

  // Sealed-entry capability to `addr` in the code region, like the link
  // register value saved by a call.
  Capability code_pointer(Addr addr) const;

  // Allocates a new heap page with zeroed object headers.
  HeapPage &add_heap_page();
  std::deque<HeapPage> &heap_pages() { return pages_; }
  const std::deque<HeapPage> &heap_pages() const { return pages_; }

  // Reference to an object slot, carrying page-wide bounds.
  VmValue object_ref(const HeapPage &page, size_t slot) const;

  struct ObjectLocation {
    HeapPage *page;
    size_t slot;
  };
  // The object starting at `addr`, if any ("looks like a pointer").
  std::optional<ObjectLocation> find_object(Addr addr);

  // Addresses of all objects marked in the pages' bitmaps, ascending.
  std::vector<Addr> marked_objects() const;

 private:
  TaggedMemory memory_;
  CapabilityModel model_;
  CapAllocator heap_;
  SimStack stack_;
  Capability code_root_;
  Capability scratch_root_;
  Capability guarded_root_;
  std::deque<HeapPage> pages_;
};

}  // namespace capsim::vm

#endif  // CAPSIM_VM_MACHINE_H_
