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

#include "capsim/vm/scenario.h"

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "capsim/capint.h"
#include "capsim/tagged_memory.h"
#include "capsim/vm/gc.h"
#include "capsim/vm/idioms.h"
#include "capsim/vm/machine.h"
#include "capsim/vm/mark_bitmap.h"

namespace capsim::vm {
namespace {

constexpr std::array<ScenarioId, kScenarioCount> kAll = {
    ScenarioId::kS1, ScenarioId::kS2,  ScenarioId::kS3,  ScenarioId::kS4,
    ScenarioId::kS5, ScenarioId::kS6,  ScenarioId::kS7,  ScenarioId::kS8,
    ScenarioId::kS9, ScenarioId::kS10, ScenarioId::kS11, ScenarioId::kS12};

constexpr std::array<ScenarioInfo, kScenarioCount> kCatalogue = {{
    {ScenarioId::kS1, "stack_scan_bounds", "invalid derived pointer", false,
     false},
    {ScenarioId::kS2, "ambiguous_pointer", "dereferencing ambiguous pointers",
     false, false},
    {ScenarioId::kS3, "inplace_realloc", "in-place reallocation", false, false},
    {ScenarioId::kS4, "bitmap_padding", "padding bits: mark bitmap", false,
     false},
    {ScenarioId::kS5, "shape_id", "padding bits: shape_id in object header",
     false, false},
    {ScenarioId::kS6, "utf8_count", "padding bits: word-parallel UTF-8 count",
     false, false},
    {ScenarioId::kS7, "backtrace_symbols",
     "temporary capability: backtrace symbol search", true, false},
    {ScenarioId::kS8, "insn_hash", "temporary capability: dispatch address hash",
     true, false},
    {ScenarioId::kS9, "immediate_test_sealed",
     "temporary capability: immediate test on return address", true, true},
    {ScenarioId::kS10, "downcast_sizet", "pointer arithmetic on size_t", false,
     false},
    {ScenarioId::kS11, "mprotect_tags", "mprotect tag invalidation", false,
     false},
    {ScenarioId::kS12, "makecontext_args", "makecontext argument truncation",
     false, false},
}};

// What a scenario body computed, compared against its oracle.
struct Computed {
  std::string expected;
  std::string actual;
  std::string detail;
};

using Body = FaultOr<Computed>;

std::string index_set(const std::vector<size_t> &indices) {
  std::string out = "{";
  for (size_t i = 0; i < indices.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(indices[i]);
  }
  return out + "}";
}

std::string hex_bytes(std::span<const uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (uint8_t b : bytes) {
    out += kDigits[b >> 4];
    out += kDigits[b & 0xf];
  }
  return out;
}

std::mt19937_64 scenario_rng(uint64_t seed, ScenarioId id) {
  return std::mt19937_64(seed * 0x9e3779b97f4a7c15ull +
                         static_cast<uint64_t>(id));
}

// Marked slots of the first heap page.
std::vector<size_t> marked_slots(const Vm &vm) {
  return vm.heap_pages().front().marks().marked();
}

// ---- planted stacks ----------------------------------------------------

// Referenced objects live in slots [0, kLiveSlots); dead ones above.
constexpr size_t kLiveSlots = 64;

struct PlantOptions {
  bool dead_decoy = false;
  bool return_address = false;
};

struct Planted {
  // Slots referenced by tagged, unsealed, 8-aligned object-start values.
  std::vector<size_t> referenced;
  std::optional<size_t> dead_slot;
};

FaultOr<Planted> plant_stack(Vm &vm, HeapPage &page, std::mt19937_64 &rng,
                             PlantOptions options) {
  const CapabilityModel &m = vm.model();
  SimStack &stack = vm.stack();
  std::set<size_t> referenced;
  Planted out;
  const size_t count = 6 + rng() % 18;
  const size_t decoy_at = rng() % (count + 1);
  const size_t ret_at = rng() % (count + 1);
  if (options.dead_decoy) {
    out.dead_slot = kLiveSlots + rng() % (kObjectsPerPage - kLiveSlots);
  }
  for (size_t i = 0; i <= count; ++i) {
    if (options.dead_decoy && i == decoy_at) {
      CAPSIM_RETURN_IF_ERROR(stack.push_word(page.object_address(*out.dead_slot)));
    }
    if (options.return_address && i == ret_at) {
      CAPSIM_RETURN_IF_ERROR(
          stack.push(vm.code_pointer(layout::kCodeBase + 8 * (rng() % 256))));
    }
    if (i == count) break;
    const size_t slot = rng() % kLiveSlots;
    const VmValue ref = vm.object_ref(page, slot);
    switch (rng() % 10) {
      case 0:
      case 1:
      case 2:
        CAPSIM_RETURN_IF_ERROR(stack.push_value(ref));
        referenced.insert(slot);
        break;
      case 3: {  // interior pointer
        CAPSIM_ASSIGN_OR_RETURN(Capability inner,
                                m.set_address(ref.capability(), ref.address() + 16));
        CAPSIM_RETURN_IF_ERROR(stack.push(inner));
        break;
      }
      case 4:
        CAPSIM_RETURN_IF_ERROR(
            stack.push_value(VmValue::fixnum(static_cast<int64_t>(rng() % 1000))));
        break;
      case 5:
        CAPSIM_RETURN_IF_ERROR(
            stack.push(vm.code_pointer(layout::kCodeBase + 4 * (rng() % 512))));
        break;
      case 6:  // pointer-like integer
        CAPSIM_RETURN_IF_ERROR(stack.push_word(ref.address()));
        break;
      case 7:
        CAPSIM_RETURN_IF_ERROR(stack.push_word(0));
        break;
      case 8: {  // tagged, but low bits say immediate
        CAPSIM_ASSIGN_OR_RETURN(Capability odd,
                                m.set_address(ref.capability(), ref.address() + 4));
        CAPSIM_RETURN_IF_ERROR(stack.push(odd));
        break;
      }
      default:
        CAPSIM_RETURN_IF_ERROR(stack.push_word(rng()));
        break;
    }
  }
  out.referenced.assign(referenced.begin(), referenced.end());
  return out;
}

// ---- scenario bodies ---------------------------------------------------

Body stack_scan_bounds(Vm &vm, Variant mode, const ScenarioConfig &cfg) {
  auto rng = scenario_rng(cfg.seed, ScenarioId::kS1);
  HeapPage &page = vm.add_heap_page();
  CAPSIM_ASSIGN_OR_RETURN(Planted planted, plant_stack(vm, page, rng, {}));
  CAPSIM_ASSIGN_OR_RETURN(Capability scan, set_stack_end(vm, mode));
  CAPSIM_ASSIGN_OR_RETURN(ScanStats stats, scan_stack(vm, scan, ScanOptions{}));
  return Computed{index_set(planted.referenced), index_set(marked_slots(vm)),
                  "scanned " + std::to_string(stats.iterations) + " slots"};
}

Body ambiguous_pointer(Vm &vm, Variant mode, const ScenarioConfig &cfg) {
  auto rng = scenario_rng(cfg.seed, ScenarioId::kS2);
  HeapPage &page = vm.add_heap_page();
  CAPSIM_ASSIGN_OR_RETURN(Planted planted,
                          plant_stack(vm, page, rng, {.dead_decoy = true}));
  CAPSIM_ASSIGN_OR_RETURN(Capability scan, set_stack_end(vm, Variant::kFixed));
  ScanOptions options;
  options.mark_variant = mode;
  CAPSIM_RETURN_IF_ERROR(scan_stack(vm, scan, options));
  const auto marked = marked_slots(vm);
  const bool dead_marked = std::find(marked.begin(), marked.end(),
                                     *planted.dead_slot) != marked.end();
  return Computed{index_set(planted.referenced), index_set(marked),
                  "dead object slot " + std::to_string(*planted.dead_slot) +
                      (dead_marked ? " marked" : " unmarked")};
}

Body inplace_realloc(Vm &vm, Variant mode, const ScenarioConfig &) {
  TaggedMemory &mem = vm.memory();
  CAPSIM_ASSIGN_OR_RETURN(Parser parser, parser_new(vm, 32));
  CAPSIM_ASSIGN_OR_RETURN(Capability first_chunk, mem.load_cap(parser.record));

  std::vector<uint8_t> written;
  for (uint64_t n : {24, 16}) {
    CAPSIM_ASSIGN_OR_RETURN(Capability piece, parser_alloc(vm, parser, n, mode));
    std::vector<uint8_t> bytes(n);
    for (uint64_t i = 0; i < n; ++i) {
      bytes[i] = static_cast<uint8_t>(0xa0 + written.size() + i);
    }
    CAPSIM_RETURN_IF_ERROR(mem.store_bytes(piece, piece.address, bytes));
    written.insert(written.end(), bytes.begin(), bytes.end());
  }

  CAPSIM_ASSIGN_OR_RETURN(Capability chunk, mem.load_cap(parser.record));
  if (chunk.base != first_chunk.base) {
    throw std::logic_error("inplace_realloc: chunk moved; layout assumption broken");
  }
  CAPSIM_ASSIGN_OR_RETURN(
      auto readback,
      mem.load_bytes(chunk, chunk.address + kChunkHeaderSize, written.size()));
  return Computed{hex_bytes(written), hex_bytes(readback),
                  "chunk grew in place to " + hex(chunk.length()) + " bytes"};
}

Body bitmap_padding(Vm &, Variant mode, const ScenarioConfig &cfg) {
  const std::vector<size_t> marks =
      cfg.inputs.mark_set.value_or(std::vector<size_t>{3, 70, 127});
  for (size_t i : marks) {
    if (i >= kBitmapScenarioBits) {
      throw std::invalid_argument("bitmap_padding: mark index out of range");
    }
  }
  MarkBitmap bitmap(mode == Variant::kBuggy ? WordModel::kPaddedCap
                                            : WordModel::kExact64,
                    kBitmapScenarioBits);
  std::vector<bool> naive(kBitmapScenarioBits, false);
  for (size_t i : marks) {
    bitmap.set(i);
    naive[i] = true;
  }
  std::vector<size_t> oracle;
  for (size_t i = 0; i < naive.size(); ++i) {
    if (naive[i]) oracle.push_back(i);
  }
  return Computed{index_set(oracle), index_set(bitmap.marked()),
                  "S = " + std::to_string(bitmap.bits_per_word()) +
                      " bits per word"};
}

Body shape_id(Vm &vm, Variant mode, const ScenarioConfig &cfg) {
  constexpr uint64_t kInitialFlags = 0x1001;
  const uint16_t shape = cfg.inputs.shape_id.value_or(0x02a5);
  const WordModel model =
      mode == Variant::kBuggy ? WordModel::kPaddedCap : WordModel::kExact64;
  HeapPage &page = vm.add_heap_page();
  const VmValue obj = vm.object_ref(page, 0);
  CAPSIM_RETURN_IF_ERROR(vm.memory().store_cap(
      obj.capability(), int64_to_capint(kInitialFlags).capability()));
  CAPSIM_RETURN_IF_ERROR(install_shape_id(vm, obj, shape, model));
  CAPSIM_ASSIGN_OR_RETURN(uint16_t read_back, read_shape_id(vm, obj, model));
  CAPSIM_ASSIGN_OR_RETURN(Capability header, vm.memory().load_cap(obj.capability()));
  const uint64_t low = header.address & ((uint64_t{1} << 48) - 1);
  return Computed{"shape=" + hex(uint64_t{shape}) + " low=" + hex(kInitialFlags),
                  "shape=" + hex(uint64_t{read_back}) + " low=" + hex(low),
                  "SHAPE_FLAG_SHIFT = " +
                      std::to_string(shape_flag_shift(model))};
}

Body utf8_count(Vm &vm, Variant mode, const ScenarioConfig &cfg) {
  static const std::string kDefault =
      "h\xc3\xa9llo w\xc3\xb6rld, \xc3\xa7" "a va? \xc3\xbcn\xc3\xaf"
      "c\xc3\xb6" "d\xc3\xa9 t\xc3\xaaxt";
  const std::vector<uint8_t> text =
      cfg.inputs.utf8_bytes.value_or(std::vector<uint8_t>(kDefault.begin(), kDefault.end()));
  // Pad with continuation bytes so the tail contributes nothing.
  const uint64_t padded = std::max<uint64_t>(16, round_up_alloc(text.size()));
  std::vector<uint8_t> storage(padded, 0x80);
  std::copy(text.begin(), text.end(), storage.begin());
  auto str = vm.heap().malloc(padded);
  if (!str.ok()) throw std::runtime_error("utf8_count: heap exhausted");
  CAPSIM_RETURN_IF_ERROR(vm.memory().store_bytes(str.value(), str.value().address, storage));
  const WordModel model =
      mode == Variant::kBuggy ? WordModel::kPaddedCap : WordModel::kExact64;
  CAPSIM_ASSIGN_OR_RETURN(uint64_t count,
                          utf8_lead_bytes_wordwise(vm, str.value(), padded, model));
  return Computed{std::to_string(utf8_lead_bytes_bytewise(text)),
                  std::to_string(count),
                  std::to_string(text.size()) + " bytes, " +
                      std::to_string(storage_bytes(model)) + "-byte stride"};
}

const std::vector<SymbolEntry> &backtrace_symtab() {
  static const std::vector<SymbolEntry> kSymtab = {
      {0x000, 0x200, "main"},     {0x200, 0x180, "init"},
      {0x400, 0x300, "gc_start"}, {0x800, 0x800, "vm_exec"},
      {0x1000, 0x100, "rb_raise"}};
  return kSymtab;
}

Body backtrace_symbols(Vm &vm, Variant mode, const ScenarioConfig &cfg) {
  auto rng = scenario_rng(cfg.seed, ScenarioId::kS7);
  const auto &symtab = backtrace_symtab();
  const uint64_t base_addr = layout::kCodeBase;
  std::string expected, actual;
  // Frames: rb_raise <- init <- vm_exec <- main.
  for (size_t sym : {4, 1, 3, 0}) {
    const uint64_t offset = (rng() % symtab[sym].st_size) & ~uint64_t{1};
    const Addr ret = base_addr + symtab[sym].st_value + offset;
    const CapInt trace_addr(vm.code_pointer(ret));
    CAPSIM_ASSIGN_OR_RETURN(auto found,
                            find_symbol(vm.model(), symtab, base_addr, trace_addr, mode));
    std::string oracle = "?";
    for (const SymbolEntry &s : symtab) {
      if (ret >= base_addr + s.st_value && ret < base_addr + s.st_value + s.st_size) {
        oracle = s.name;
        break;
      }
    }
    if (!expected.empty()) {
      expected += ',';
      actual += ',';
    }
    expected += oracle;
    actual += found ? symtab[*found].name : "?";
  }
  return Computed{expected, actual, "4 frames resolved"};
}

Body insn_hash_table(Vm &vm, Variant mode, const ScenarioConfig &cfg) {
  std::vector<Addr> routines;
  if (cfg.inputs.dispatch_address) {
    routines.push_back(*cfg.inputs.dispatch_address);
  } else {
    for (uint64_t off : {0x000, 0x040, 0x0c0, 0x100, 0x2a0, 0x1f80}) {
      routines.push_back(layout::kCodeBase + off);
    }
  }
  std::unordered_map<uint64_t, size_t> table;
  std::string expected, actual;
  for (size_t opcode = 0; opcode < routines.size(); ++opcode) {
    const Addr n = routines[opcode];
    const CapInt entry(vm.code_pointer(n));
    CAPSIM_ASSIGN_OR_RETURN(uint64_t h, insn_hash(vm.model(), entry, mode));
    table.emplace(h, opcode);
    const uint64_t direct = ((n >> 11) | (n << 3)) ^ (n >> 3);
    if (opcode) {
      expected += ',';
      actual += ',';
    }
    expected += hex(direct);
    actual += hex(h);
  }
  size_t resolved = 0;
  for (size_t opcode = 0; opcode < routines.size(); ++opcode) {
    const Addr n = routines[opcode];
    auto it = table.find(((n >> 11) | (n << 3)) ^ (n >> 3));
    if (it != table.end() && it->second == opcode) ++resolved;
  }
  return Computed{expected, actual,
                  std::to_string(resolved) + "/" + std::to_string(routines.size()) +
                      " routines resolved"};
}

Body immediate_test_sealed(Vm &vm, Variant mode, const ScenarioConfig &cfg) {
  auto rng = scenario_rng(cfg.seed, ScenarioId::kS9);
  HeapPage &page = vm.add_heap_page();
  CAPSIM_ASSIGN_OR_RETURN(Planted planted,
                          plant_stack(vm, page, rng, {.return_address = true}));
  CAPSIM_ASSIGN_OR_RETURN(Capability scan, set_stack_end(vm, Variant::kFixed));
  ScanOptions options;
  options.immediate_variant = mode;
  options.opt_level = cfg.opt_level;
  CAPSIM_ASSIGN_OR_RETURN(ScanStats stats, scan_stack(vm, scan, options));
  return Computed{index_set(planted.referenced), index_set(marked_slots(vm)),
                  "scanned " + std::to_string(stats.iterations) + " slots"};
}

Body downcast_sizet(Vm &vm, Variant mode, const ScenarioConfig &) {
  constexpr uint64_t kThreadId = 0x7e57;
  HeapPage &page = vm.add_heap_page();
  const VmValue thread = vm.object_ref(page, 4);
  CAPSIM_RETURN_IF_ERROR(vm.memory().store_u64(
      thread.capability(), thread.address() + kThreadIdOffset, kThreadId));
  CAPSIM_ASSIGN_OR_RETURN(
      Capability w,
      vm.model().set_address(thread.capability(),
                             thread.address() + kWaitingNodeOffset));
  CAPSIM_ASSIGN_OR_RETURN(Capability rec,
                          thread_from_waiting_node(vm.model(), CapInt(w), mode));
  CAPSIM_ASSIGN_OR_RETURN(uint64_t id,
                          vm.memory().load_u64(rec, rec.address + kThreadIdOffset));
  return Computed{hex(kThreadId), hex(id), "recovered record at " + hex(rec.address)};
}

Body mprotect_tags(Vm &vm, Variant mode, const ScenarioConfig &) {
  constexpr uint64_t kPayload = 0xfeedface;
  constexpr uint64_t kSlotOffset = 0x40;
  TaggedMemory &mem = vm.memory();
  HeapPage &page = vm.add_heap_page();
  const VmValue obj = vm.object_ref(page, 1);
  CAPSIM_RETURN_IF_ERROR(mem.store_u64(obj.capability(), obj.address() + 16, kPayload));
  const Capability &guard = vm.guarded_root();
  CAPSIM_RETURN_IF_ERROR(mem.store_cap(guard, guard.base + kSlotOffset, obj.capability()));
  mem.mprotect({guard.base, kPageSize, PermissionSet::none(), false});
  mem.mprotect({guard.base, kPageSize, {Permission::kLoad, Permission::kStore},
                mode == Variant::kFixed});
  CAPSIM_ASSIGN_OR_RETURN(Capability ref, mem.load_cap(guard, guard.base + kSlotOffset));
  CAPSIM_ASSIGN_OR_RETURN(uint64_t value, mem.load_u64(ref, ref.address + 16));
  return Computed{hex(kPayload), hex(value),
                  mode == Variant::kFixed ? "restored with PROT_CAP"
                                          : "restored without PROT_CAP"};
}

Body makecontext_args(Vm &vm, Variant mode, const ScenarioConfig &) {
  constexpr uint64_t kPayload = 0x1234abcd;
  const Addr ctx = layout::kScratchBase + 0x100;
  HeapPage &page = vm.add_heap_page();
  const VmValue obj = vm.object_ref(page, 2);
  CAPSIM_RETURN_IF_ERROR(
      vm.memory().store_u64(obj.capability(), obj.address() + 16, kPayload));
  CAPSIM_RETURN_IF_ERROR(makecontext(vm, ctx, obj.capability(), mode));
  CAPSIM_ASSIGN_OR_RETURN(Capability arg, context_argument(vm, ctx, mode));
  CAPSIM_ASSIGN_OR_RETURN(uint64_t value, vm.memory().load_u64(arg, arg.address + 16));
  return Computed{hex(kPayload), hex(value),
                  mode == Variant::kFixed ? "16-byte argument slot"
                                          : "8-byte argument slot"};
}

Body run_body(ScenarioId id, Vm &vm, Variant mode, const ScenarioConfig &cfg) {
  switch (id) {
    case ScenarioId::kS1:
      return stack_scan_bounds(vm, mode, cfg);
    case ScenarioId::kS2:
      return ambiguous_pointer(vm, mode, cfg);
    case ScenarioId::kS3:
      return inplace_realloc(vm, mode, cfg);
    case ScenarioId::kS4:
      return bitmap_padding(vm, mode, cfg);
    case ScenarioId::kS5:
      return shape_id(vm, mode, cfg);
    case ScenarioId::kS6:
      return utf8_count(vm, mode, cfg);
    case ScenarioId::kS7:
      return backtrace_symbols(vm, mode, cfg);
    case ScenarioId::kS8:
      return insn_hash_table(vm, mode, cfg);
    case ScenarioId::kS9:
      return immediate_test_sealed(vm, mode, cfg);
    case ScenarioId::kS10:
      return downcast_sizet(vm, mode, cfg);
    case ScenarioId::kS11:
      return mprotect_tags(vm, mode, cfg);
    case ScenarioId::kS12:
      return makecontext_args(vm, mode, cfg);
  }
  throw std::invalid_argument("run_scenario: unknown scenario id");
}

}  // namespace

std::span<const ScenarioId> all_scenarios() { return kAll; }

std::string scenario_key(ScenarioId id) {
  return "S" + std::to_string(static_cast<int>(id));
}

std::optional<ScenarioId> parse_scenario_id(std::string_view key) {
  for (ScenarioId id : kAll) {
    if (scenario_key(id) == key) return id;
  }
  return std::nullopt;
}

const ScenarioInfo &scenario_info(ScenarioId id) {
  const auto index = static_cast<size_t>(id) - 1;
  if (index >= kCatalogue.size()) {
    throw std::invalid_argument("scenario_info: unknown scenario id");
  }
  return kCatalogue[index];
}

std::string_view outcome_kind_name(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::kOk:
      return "ok";
    case OutcomeKind::kFault:
      return "fault";
    case OutcomeKind::kCorrupt:
      return "corrupt";
  }
  return "?";
}

std::optional<OutcomeKind> parse_outcome_kind(std::string_view name) {
  for (OutcomeKind k :
       {OutcomeKind::kOk, OutcomeKind::kFault, OutcomeKind::kCorrupt}) {
    if (outcome_kind_name(k) == name) return k;
  }
  return std::nullopt;
}

std::string to_string(const Expectation &e) {
  if (e.kind == OutcomeKind::kFault && e.fault) {
    return std::string(fault_kind_name(*e.fault));
  }
  return std::string(outcome_kind_name(e.kind));
}

Expectation expected_outcome(ScenarioId id, Variant mode,
                             SealSemanticsMode seal_mode, OptLevel opt_level) {
  const auto fault = [](FaultKind k) {
    return Expectation{OutcomeKind::kFault, k};
  };
  const Expectation ok{OutcomeKind::kOk, std::nullopt};
  if (mode == Variant::kFixed) return ok;
  const bool traps = seal_mode == SealSemanticsMode::kFaultOnModify;
  switch (id) {
    case ScenarioId::kS1:
    case ScenarioId::kS3:
      return fault(FaultKind::kBounds);
    case ScenarioId::kS2:
    case ScenarioId::kS10:
    case ScenarioId::kS11:
    case ScenarioId::kS12:
      return fault(FaultKind::kTag);
    case ScenarioId::kS4:
    case ScenarioId::kS5:
    case ScenarioId::kS6:
      return Expectation{OutcomeKind::kCorrupt, std::nullopt};
    case ScenarioId::kS7:
    case ScenarioId::kS8:
      return traps ? fault(FaultKind::kSeal) : ok;
    case ScenarioId::kS9:
      return traps && opt_level == OptLevel::kO0 ? fault(FaultKind::kSeal) : ok;
  }
  throw std::invalid_argument("expected_outcome: unknown scenario id");
}

std::ostream &operator<<(std::ostream &os, const ScenarioOutcome &o) {
  os << scenario_key(o.scenario) << '/' << variant_name(o.mode) << '/'
     << seal_mode_name(o.seal_mode);
  if (o.opt_level) os << '/' << opt_level_name(*o.opt_level);
  os << ": " << outcome_kind_name(o.kind);
  if (o.fault) os << ' ' << fault_kind_name(*o.fault);
  if (o.expected) os << " expected=" << *o.expected;
  if (o.actual) os << " actual=" << *o.actual;
  if (!o.detail.empty()) os << " (" << o.detail << ')';
  return os;
}

ScenarioOutcome run_scenario(ScenarioId id, Variant mode,
                             const ScenarioConfig &config) {
  const ScenarioInfo &info = scenario_info(id);
  ScenarioOutcome out;
  out.scenario = id;
  out.mode = mode;
  out.seal_mode = config.seal_mode;
  if (info.opt_sensitive) out.opt_level = config.opt_level;

  Vm vm(config.seal_mode);
  Body body = run_body(id, vm, mode, config);
  if (!body.ok()) {
    const Fault &f = body.error();
    out.kind = OutcomeKind::kFault;
    out.fault = f.kind;
    out.detail = f.detail;
    return out;
  }
  Computed &c = body.value();
  out.kind = c.expected == c.actual ? OutcomeKind::kOk : OutcomeKind::kCorrupt;
  out.expected = std::move(c.expected);
  out.actual = std::move(c.actual);
  out.detail = std::move(c.detail);
  return out;
}

}  // namespace capsim::vm
