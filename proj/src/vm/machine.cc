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

#include "capsim/vm/machine.h"

#include <algorithm>
#include <stdexcept>

namespace capsim::vm {
namespace {

constexpr PermissionSet kReadWrite = {Permission::kLoad, Permission::kStore};

}  // namespace

HeapPage::HeapPage(Capability page)
    : page_(page), marks_(WordModel::kExact64, kObjectsPerPage) {
  if (page.length() != kHeapPageSize) {
    throw std::invalid_argument("HeapPage: capability must span one page");
  }
}

Addr HeapPage::object_address(size_t slot) const {
  if (slot >= kObjectsPerPage) throw std::out_of_range("HeapPage slot");
  return page_.base + slot * kObjectSlotSize;
}

std::optional<size_t> HeapPage::slot_of(Addr addr) const {
  if (!contains(addr) || (addr - page_.base) % kObjectSlotSize != 0) {
    return std::nullopt;
  }
  return (addr - page_.base) / kObjectSlotSize;
}

SimStack::SimStack(TaggedMemory &memory, const CapabilityModel &model,
                   Capability region)
    : memory_(memory),
      model_(model),
      region_(region),
      top_(static_cast<Addr>(region.top)) {}

FaultOr<Addr> SimStack::reserve_slot() {
  const Addr slot = top_ - layout::kStackSlotSize;
  if (top_ < region_.base + layout::kStackSlotSize) {
    return Fault{FaultKind::kBounds, "stack overflow at " + hex(slot)};
  }
  top_ = slot;
  return slot;
}

Status SimStack::push(const Capability &value) {
  CAPSIM_ASSIGN_OR_RETURN(Addr slot, reserve_slot());
  return memory_.store_cap(region_, slot, value);
}

Status SimStack::push_word(uint64_t word) {
  CAPSIM_ASSIGN_OR_RETURN(Addr slot, reserve_slot());
  std::array<uint8_t, layout::kStackSlotSize> bytes{};
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<uint8_t>(word >> (8 * i));
  return memory_.store_bytes(region_, slot, bytes);
}

FaultOr<Capability> SimStack::address_of_top() const {
  return model_.set_bounds(region_, top_, layout::kStackSlotSize);
}

Vm::Vm(SealSemanticsMode mode)
    : memory_(layout::kMemorySize),
      model_(mode),
      heap_(memory_, make_root(layout::kHeapBase, layout::kHeapSize, kReadWrite)),
      stack_(memory_, model_,
             make_root(layout::kStackBase,
                       layout::kStackSlots * layout::kStackSlotSize,
                       kReadWrite)),
      code_root_(make_root(layout::kCodeBase, layout::kCodeSize,
                           {Permission::kLoad, Permission::kExecute})),
      scratch_root_(
          make_root(layout::kScratchBase, layout::kScratchSize, kReadWrite)),
      guarded_root_(
          make_root(layout::kGuardedPageBase, kPageSize, kReadWrite)) {
  // Nothing lives in the first page.
  memory_.mprotect({0, kPageSize, PermissionSet::none(), false});
}

Capability Vm::code_pointer(Addr addr) const {
  return model_.seal_entry(model_.set_address(code_root_, addr).value());
}

HeapPage &Vm::add_heap_page() {
  auto page = heap_.malloc(kHeapPageSize);
  if (!page.ok()) {
    throw std::runtime_error("Vm: heap exhausted allocating a page");
  }
  if (page.value().base % kHeapPageSize != 0) {
    throw std::logic_error("Vm: heap page not page aligned");
  }
  return pages_.emplace_back(page.value());
}

VmValue Vm::object_ref(const HeapPage &page, size_t slot) const {
  return VmValue(
      model_.set_address(page.capability(), page.object_address(slot)).value());
}

std::optional<Vm::ObjectLocation> Vm::find_object(Addr addr) {
  for (HeapPage &page : pages_) {
    if (auto slot = page.slot_of(addr)) return ObjectLocation{&page, *slot};
  }
  return std::nullopt;
}

std::vector<Addr> Vm::marked_objects() const {
  std::vector<Addr> out;
  for (const HeapPage &page : pages_) {
    for (size_t slot : page.marks().marked()) {
      out.push_back(page.object_address(slot));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace capsim::vm
