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

#include "capsim/vm/gc.h"

#include <string>

#include "capsim/capint.h"

namespace capsim::vm {

FaultOr<bool> vm_immediate_p(const CapabilityModel &model, const VmValue &v,
                             Variant variant, OptLevel opt_level) {
  if (variant == Variant::kBuggy && opt_level == OptLevel::kO0) {
    CAPSIM_ASSIGN_OR_RETURN(
        CapInt masked, capint_apply(model, v.bits(), kImmediateMask, BinOp::kAnd));
    return masked.address() != 0;
  }
  return (capint_to_int64(v.bits()) & kImmediateMask) != 0;
}

FaultOr<bool> gc_mark(Vm &vm, const VmValue &v, Variant variant) {
  CAPSIM_ASSIGN_OR_RETURN(
      bool immediate,
      vm_immediate_p(vm.model(), v, Variant::kFixed, OptLevel::kO1));
  if (immediate) return false;
  if (variant == Variant::kFixed && (!v.tagged() || v.sealed())) return false;
  auto object = vm.find_object(v.address());
  if (!object) return false;
  // Read the object header through the candidate reference.
  CAPSIM_RETURN_IF_ERROR(vm.memory().load_cap(v.capability(), v.address()));
  MarkBitmap &marks = object->page->marks();
  if (marks.test(object->slot)) return false;
  marks.set(object->slot);
  return true;
}

FaultOr<ScanStats> scan_stack(Vm &vm, Capability scan,
                              const ScanOptions &options) {
  ScanStats stats;
  const Addr bottom = vm.stack().bottom();
  while (scan.address < bottom) {
    ++stats.iterations;
    auto tagged = [&](Fault f) {
      f.detail = "iteration " + std::to_string(stats.iterations) + ": " +
                 f.detail;
      return f;
    };
    auto slot = vm.memory().load_cap(scan);
    if (!slot.ok()) return tagged(std::move(slot).error());
    const VmValue v(slot.value());
    auto immediate = vm_immediate_p(vm.model(), v, options.immediate_variant,
                                    options.opt_level);
    if (!immediate.ok()) return tagged(std::move(immediate).error());
    if (!immediate.value()) {
      auto marked = gc_mark(vm, v, options.mark_variant);
      if (!marked.ok()) return tagged(std::move(marked).error());
      if (marked.value()) ++stats.newly_marked;
    }
    // scan++
    auto next = vm.model().set_address(scan, scan.address + layout::kStackSlotSize);
    if (!next.ok()) return tagged(std::move(next).error());
    scan = next.value();
  }
  return stats;
}

FaultOr<Capability> set_stack_end(Vm &vm, Variant variant) {
  SimStack &stack = vm.stack();
  CAPSIM_RETURN_IF_ERROR(stack.push_word(0));
  if (variant == Variant::kBuggy) return stack.address_of_top();
  return vm.model().set_address(stack.super_capability(), stack.top());
}

}  // namespace capsim::vm
