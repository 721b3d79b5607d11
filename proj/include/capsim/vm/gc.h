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

#ifndef CAPSIM_VM_GC_H_
#define CAPSIM_VM_GC_H_

#include <cstddef>

#include "capsim/capability.h"
#include "capsim/fault.h"
#include "capsim/vm/machine.h"
#include "capsim/vm/value.h"

namespace capsim::vm {

// (v & kImmediateMask) != 0.
//
// kBuggy at O0 evaluates the mask on the capability-typed value, which
// derives a temporary capability from v; a sealed v then faults or loses
// its tag according to the seal mode. kBuggy at O1 and kFixed work on the
// integer address and never fault.
FaultOr<bool> vm_immediate_p(const CapabilityModel &model, const VmValue &v,
                             Variant variant, OptLevel opt_level);

// Marks the object `v` refers to. Returns whether a bit was newly set.
//
// kBuggy trusts the bit pattern: any address at the start of a heap object
// slot is dereferenced, so an untagged pointer-like integer raises a tag
// fault. kFixed additionally requires a valid tag and an unsealed value.
FaultOr<bool> gc_mark(Vm &vm, const VmValue &v, Variant variant);

struct ScanOptions {
  Variant mark_variant = Variant::kFixed;
  // Immediate test the scan applies before calling gc_mark.
  Variant immediate_variant = Variant::kFixed;
  OptLevel opt_level = OptLevel::kO1;
};

struct ScanStats {
  size_t iterations = 0;
  size_t newly_marked = 0;
};

// Conservative root scan: loads every slot from `scan` up to the stack
// bottom, incrementing the scanning capability one slot at a time. Faults
// carry the 1-based iteration number in the detail ("iteration 2: ...").
FaultOr<ScanStats> scan_stack(Vm &vm, Capability scan,
                              const ScanOptions &options);

// Pushes the `top` local of a fresh frame and returns the capability the
// scan starts from. kBuggy takes the address of the local; kFixed derives
// it from the stack's super capability.
FaultOr<Capability> set_stack_end(Vm &vm, Variant variant);

}  // namespace capsim::vm

#endif  // CAPSIM_VM_GC_H_
