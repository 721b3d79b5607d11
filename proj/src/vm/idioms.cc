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

#include "capsim/vm/idioms.h"

#include <bit>

namespace capsim::vm {

uint64_t utf8_lead_bytes_bytewise(std::span<const uint8_t> bytes) {
  uint64_t count = 0;
  for (uint8_t b : bytes) {
    if ((b & 0xc0) != 0x80) ++count;
  }
  return count;
}

FaultOr<uint64_t> utf8_lead_bytes_wordwise(const Vm &vm, const Capability &str,
                                           uint64_t length, WordModel model) {
  const uint64_t step = storage_bytes(model);
  const CapabilityModel &m = vm.model();
  uint64_t count = 0;
  for (uint64_t off = 0; off < length; off += step) {
    const Addr at = str.address + off;
    if (model == WordModel::kExact64) {
      CAPSIM_ASSIGN_OR_RETURN(uint64_t d, vm.memory().load_u64(str, at));
      d = (d >> 6) | (~d >> 7);
      d &= kNonAsciiMask >> 7;
      count += std::popcount(d);
      continue;
    }
    // uintptr_t d = *s;
    CAPSIM_ASSIGN_OR_RETURN(Capability word, vm.memory().load_cap(str, at));
    const CapInt d(word);
    CAPSIM_ASSIGN_OR_RETURN(CapInt hi, capint_apply(m, d, uint64_t{6}, BinOp::kShr));
    CAPSIM_ASSIGN_OR_RETURN(CapInt inv, capint_apply(m, d, ~uint64_t{0}, BinOp::kXor));
    CAPSIM_ASSIGN_OR_RETURN(CapInt lo, capint_apply(m, inv, uint64_t{7}, BinOp::kShr));
    CAPSIM_ASSIGN_OR_RETURN(CapInt merged, capint_apply(m, hi, lo, BinOp::kOr));
    CAPSIM_ASSIGN_OR_RETURN(
        CapInt lead, capint_apply(m, merged, kNonAsciiMask >> 7, BinOp::kAnd));
    count += std::popcount(capint_to_int64(lead));
  }
  return count;
}

Status install_shape_id(Vm &vm, const VmValue &object, uint16_t shape_id,
                        WordModel model) {
  const CapabilityModel &m = vm.model();
  CAPSIM_ASSIGN_OR_RETURN(Capability header, vm.memory().load_cap(object.capability()));
  CAPSIM_ASSIGN_OR_RETURN(
      CapInt shifted,
      capint_apply(m, int64_to_capint(shape_id), shape_flag_shift(model),
                   BinOp::kShl));
  CAPSIM_ASSIGN_OR_RETURN(CapInt flags,
                          capint_apply(m, CapInt(header), shifted, BinOp::kOr));
  return vm.memory().store_cap(object.capability(), flags.capability());
}

FaultOr<uint16_t> read_shape_id(const Vm &vm, const VmValue &object,
                                WordModel model) {
  CAPSIM_ASSIGN_OR_RETURN(Capability header, vm.memory().load_cap(object.capability()));
  CAPSIM_ASSIGN_OR_RETURN(CapInt shape,
                          capint_apply(vm.model(), CapInt(header),
                                       shape_flag_shift(model), BinOp::kShr));
  return static_cast<uint16_t>(capint_to_int64(shape));
}

FaultOr<uint64_t> insn_hash(const CapabilityModel &model, const CapInt &n,
                            Variant variant) {
  if (variant == Variant::kFixed) {
    const uint64_t x = capint_to_int64(n);
    return ((x >> kHashShift1) | (x << kHashShift2)) ^ (x >> kHashShift2);
  }
  CAPSIM_ASSIGN_OR_RETURN(CapInt a, capint_apply(model, n, kHashShift1, BinOp::kShr));
  CAPSIM_ASSIGN_OR_RETURN(CapInt b, capint_apply(model, n, kHashShift2, BinOp::kShl));
  CAPSIM_ASSIGN_OR_RETURN(CapInt c, capint_apply(model, a, b, BinOp::kOr));
  CAPSIM_ASSIGN_OR_RETURN(CapInt d, capint_apply(model, n, kHashShift2, BinOp::kShr));
  CAPSIM_ASSIGN_OR_RETURN(CapInt h, capint_apply(model, c, d, BinOp::kXor));
  return capint_to_int64(h);
}

FaultOr<std::optional<size_t>> find_symbol(const CapabilityModel &model,
                                           std::span<const SymbolEntry> symtab,
                                           uint64_t base_addr,
                                           const CapInt &trace_addr,
                                           Variant variant) {
  for (size_t j = 0; j < symtab.size(); ++j) {
    const SymbolEntry &sym = symtab[j];
    // uintptr_t saddr = (uintptr_t)sym->st_value + base_addr;
    CAPSIM_ASSIGN_OR_RETURN(
        CapInt saddr, capint_apply(model, int64_to_capint(sym.st_value),
                                   base_addr, BinOp::kAdd));
    uint64_t d;
    if (variant == Variant::kBuggy) {
      CAPSIM_ASSIGN_OR_RETURN(CapInt diff,
                              capint_apply(model, trace_addr, saddr, BinOp::kSub));
      d = capint_to_int64(diff);
    } else {
      d = capint_to_int64(trace_addr) - capint_to_int64(saddr);
    }
    if (d < sym.st_size) return std::optional<size_t>(j);
  }
  return std::optional<size_t>();
}

FaultOr<Parser> parser_new(Vm &vm, uint64_t initial_alloc) {
  auto record = vm.heap().malloc(kCapabilitySize);
  auto chunk = vm.heap().malloc(kChunkHeaderSize + initial_alloc);
  if (!record.ok() || !chunk.ok()) {
    throw std::runtime_error("parser_new: heap exhausted");
  }
  TaggedMemory &mem = vm.memory();
  const Capability &c = chunk.value();
  CAPSIM_RETURN_IF_ERROR(mem.store_u64(c, c.address, initial_alloc));
  CAPSIM_RETURN_IF_ERROR(mem.store_u64(c, c.address + 8, 0));
  CAPSIM_RETURN_IF_ERROR(mem.store_cap(record.value(), c));
  return Parser{record.value()};
}

FaultOr<Capability> parser_alloc(Vm &vm, const Parser &parser,
                                 uint64_t num_bytes, Variant variant) {
  TaggedMemory &mem = vm.memory();
  CAPSIM_ASSIGN_OR_RETURN(Capability chunk, mem.load_cap(parser.record));
  CAPSIM_ASSIGN_OR_RETURN(uint64_t alloc, mem.load_u64(chunk, chunk.address));
  CAPSIM_ASSIGN_OR_RETURN(uint64_t used, mem.load_u64(chunk, chunk.address + 8));
  if (used + num_bytes > alloc) {
    const uint64_t new_size = kChunkHeaderSize + alloc + num_bytes;
    auto new_data = vm.heap().realloc(chunk, new_size);
    if (new_data.ok()) {
      if (variant == Variant::kFixed || new_data.value().base != chunk.base) {
        chunk = new_data.value();
        CAPSIM_RETURN_IF_ERROR(mem.store_cap(parser.record, chunk));
      }
      alloc += num_bytes;
      CAPSIM_RETURN_IF_ERROR(mem.store_u64(chunk, chunk.address, alloc));
    } else {
      auto fresh = vm.heap().malloc(kChunkHeaderSize + num_bytes);
      if (!fresh.ok()) throw std::runtime_error("parser_alloc: heap exhausted");
      chunk = fresh.value();
      alloc = num_bytes;
      used = 0;
      CAPSIM_RETURN_IF_ERROR(mem.store_u64(chunk, chunk.address, alloc));
      CAPSIM_RETURN_IF_ERROR(mem.store_cap(parser.record, chunk));
    }
  }
  CAPSIM_ASSIGN_OR_RETURN(
      Capability ret,
      vm.model().set_address(chunk, chunk.address + kChunkHeaderSize + used));
  CAPSIM_RETURN_IF_ERROR(mem.store_u64(chunk, chunk.address + 8, used + num_bytes));
  return ret;
}

FaultOr<Capability> thread_from_waiting_node(const CapabilityModel &model,
                                             const CapInt &w, Variant variant) {
  if (variant == Variant::kBuggy) {
    const uint64_t as_size_t = capint_to_int64(w);
    return int64_to_capint(as_size_t - kWaitingNodeOffset).capability();
  }
  CAPSIM_ASSIGN_OR_RETURN(CapInt rec,
                          capint_apply(model, w, kWaitingNodeOffset, BinOp::kSub));
  return rec.capability();
}

namespace {

constexpr uint64_t kContextArgcOffset = 0;
constexpr uint64_t kContextArgOffset = 16;

}  // namespace

Status makecontext(Vm &vm, Addr ctx, const Capability &arg, Variant variant) {
  TaggedMemory &mem = vm.memory();
  const Capability &root = vm.scratch_root();
  CAPSIM_RETURN_IF_ERROR(mem.store_u64(root, ctx + kContextArgcOffset, 1));
  if (variant == Variant::kBuggy) {
    return mem.store_u64(root, ctx + kContextArgOffset,
                         capint_to_int64(CapInt(arg)));
  }
  return mem.store_cap(root, ctx + kContextArgOffset, arg);
}

FaultOr<Capability> context_argument(const Vm &vm, Addr ctx, Variant variant) {
  const TaggedMemory &mem = vm.memory();
  const Capability &root = vm.scratch_root();
  if (variant == Variant::kBuggy) {
    CAPSIM_ASSIGN_OR_RETURN(uint64_t raw, mem.load_u64(root, ctx + kContextArgOffset));
    return int64_to_capint(raw).capability();
  }
  return mem.load_cap(root, ctx + kContextArgOffset);
}

}  // namespace capsim::vm
