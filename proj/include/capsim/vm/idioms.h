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

#ifndef CAPSIM_VM_IDIOMS_H_
#define CAPSIM_VM_IDIOMS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "capsim/capability.h"
#include "capsim/capint.h"
#include "capsim/fault.h"
#include "capsim/vm/machine.h"
#include "capsim/vm/value.h"

// VM implementation idioms, each written once over capability-typed words
// (the original code) and once over exact-width integers (the port).

namespace capsim::vm {

// ---- UTF-8 lead-byte counting ----------------------------------------

// High bit of every byte of a 64-bit word.
inline constexpr uint64_t kNonAsciiMask = 0x8080808080808080ull;

// Number of bytes in `bytes` that are not UTF-8 continuation bytes.
uint64_t utf8_lead_bytes_bytewise(std::span<const uint8_t> bytes);

// Word-parallel count over [str.address, str.address + length), stepping by
// storage_bytes(model). `length` must be a multiple of 16. Only the value
// bits of each word take part, so kPaddedCap sees the low 8 bytes of every
// 16-byte step.
FaultOr<uint64_t> utf8_lead_bytes_wordwise(const Vm &vm, const Capability &str,
                                           uint64_t length, WordModel model);

// ---- Shape id in the object header -----------------------------------

inline constexpr unsigned kShapeIdBits = 16;

// (SIZEOF_VALUE * 8) - SHAPE_ID_NUM_BITS, with SIZEOF_VALUE taken from the
// storage size of the word model.
constexpr unsigned shape_flag_shift(WordModel model) {
  return storage_bits(model) - kShapeIdBits;
}

// flags |= (VALUE)shape_id << shift, on the header word of `object`.
Status install_shape_id(Vm &vm, const VmValue &object, uint16_t shape_id,
                        WordModel model);
// (uint16_t)(flags >> shift)
FaultOr<uint16_t> read_shape_id(const Vm &vm, const VmValue &object,
                                WordModel model);

// ---- Instruction-address hash ----------------------------------------

inline constexpr unsigned kHashShift1 = 11;
inline constexpr unsigned kHashShift2 = 3;

// (n >> 11 | n << 3) ^ (n >> 3) evaluated on a routine address. kBuggy
// keeps n capability-typed through every step.
FaultOr<uint64_t> insn_hash(const CapabilityModel &model, const CapInt &n,
                            Variant variant);

// ---- Symbol lookup for backtraces ------------------------------------

struct SymbolEntry {
  uint64_t st_value = 0;  // offset from the image base
  uint64_t st_size = 0;
  std::string name;
};

// First symbol j with trace_addr - (st_value + base_addr) < st_size.
// kBuggy subtracts with trace_addr still capability-typed.
FaultOr<std::optional<size_t>> find_symbol(const CapabilityModel &model,
                                           std::span<const SymbolEntry> symtab,
                                           uint64_t base_addr,
                                           const CapInt &trace_addr,
                                           Variant variant);

// ---- Parser chunk allocator ------------------------------------------

// Chunk header: alloc (u64) at +0, used (u64) at +8, data from +16.
inline constexpr uint64_t kChunkHeaderSize = 16;

// A parser record holding the `cur_chunk` capability at offset 0.
struct Parser {
  Capability record;
};

// Creates a parser record and a first chunk with `initial_alloc` data bytes.
FaultOr<Parser> parser_new(Vm &vm, uint64_t initial_alloc);

// Carves `num_bytes` out of the current chunk, growing it with realloc
// when full. kBuggy keeps using the pre-realloc chunk capability when the
// block did not move.
FaultOr<Capability> parser_alloc(Vm &vm, const Parser &parser,
                                 uint64_t num_bytes, Variant variant);

// ---- Container downcast ----------------------------------------------

// Thread record layout: id (u64) at +0, embedded waiting node at +48.
inline constexpr uint64_t kThreadRecSize = 64;
inline constexpr uint64_t kThreadIdOffset = 0;
inline constexpr uint64_t kWaitingNodeOffset = 48;

// (thread *)((T)w - offsetof(thread, waiting)), with T = size_t for kBuggy
// and uintptr_t for kFixed.
FaultOr<Capability> thread_from_waiting_node(const CapabilityModel &model,
                                             const CapInt &w, Variant variant);

// ---- Coroutine context -----------------------------------------------

// Copies `arg` into the argument slot of a context at `ctx`. kBuggy copies
// it as uint64_t (8-byte slot); kFixed as a capability (16-byte slot).
Status makecontext(Vm &vm, Addr ctx, const Capability &arg, Variant variant);
// Reads the argument back as the callee sees it.
FaultOr<Capability> context_argument(const Vm &vm, Addr ctx, Variant variant);

}  // namespace capsim::vm

#endif  // CAPSIM_VM_IDIOMS_H_
