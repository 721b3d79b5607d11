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

#include <gtest/gtest.h>

#include <map>
#include <vector>

#include "capsim/capability.h"
#include "capsim/capint.h"
#include "capsim/tagged_memory.h"
#include "generators.h"
#include "oracles.h"
#include "properties.h"

namespace capsim {
namespace {

using test_support::Gen;

void expect_holds(const properties::Result &r) {
  EXPECT_TRUE(r.ok()) << r.summary();
  for (const std::string &f : r.failures) ADD_FAILURE() << f;
}

// The shared suites, on seeds other than the acceptance run's.
TEST(PropertySuiteTest, Monotonicity) { expect_holds(properties::monotonicity_chains(1, 500)); }
TEST(PropertySuiteTest, Revocation) { expect_holds(properties::revocation_interleavings(2, 100)); }
TEST(PropertySuiteTest, Utf8) { expect_holds(properties::utf8_equivalence(3, 300)); }
TEST(PropertySuiteTest, Bitmap) { expect_holds(properties::bitmap_equivalence(4, 300)); }
TEST(PropertySuiteTest, Hash) { expect_holds(properties::hash_equivalence(5, 100)); }
TEST(PropertySuiteTest, ScanSoundness) { expect_holds(properties::scan_soundness(6, 100)); }
TEST(PropertySuiteTest, SealDuality) { expect_holds(properties::seal_duality(7, 100)); }
TEST(PropertySuiteTest, PitfallMatrix) { expect_holds(properties::pitfall_matrix(8, nullptr)); }

constexpr BinOp kOps[] = {BinOp::kAdd, BinOp::kSub, BinOp::kAnd, BinOp::kOr,
                          BinOp::kXor, BinOp::kShl, BinOp::kShr};

TEST(CapabilityPropertyTest, NoTagFromUntaggedInput) {
  Gen gen(21);
  for (SealSemanticsMode mode :
       {SealSemanticsMode::kFaultOnModify, SealSemanticsMode::kInvalidateOnModify}) {
    const CapabilityModel model(mode);
    for (int i = 0; i < 1000; ++i) {
      Capability cap = gen.root();
      cap.perms = PermissionSet::all();
      cap.tag = false;
      if (gen.coin()) cap.seal = SealState::kSealedEntry;
      auto a = model.set_bounds(cap, cap.base, 0);
      auto b = model.restrict_perms(cap, gen.perms());
      auto c = model.set_address(cap, gen.next());
      ASSERT_TRUE(a.ok() && b.ok() && c.ok());
      EXPECT_FALSE(a->tag);
      EXPECT_FALSE(b->tag);
      EXPECT_FALSE(c->tag);
      EXPECT_FALSE(model.seal_entry(cap).tag);
      const BinOp op = kOps[gen.below(7)];
      auto d = capint_apply(model, CapInt(cap), gen.next(), op);
      ASSERT_TRUE(d.ok());
      EXPECT_FALSE(d->tagged());
      auto e = capint_apply(model, gen.next(), CapInt(cap), op);
      ASSERT_TRUE(e.ok());
      EXPECT_FALSE(e->tagged());
      EXPECT_FALSE(int64_to_capint(gen.next()).tagged());
    }
  }
}

TEST(CapabilityPropertyTest, LeftOperandMetadataIsInherited) {
  Gen gen(22);
  const CapabilityModel model(SealSemanticsMode::kFaultOnModify);
  for (int i = 0; i < 1000; ++i) {
    const Capability l = gen.root();
    const Operand r = gen.coin() ? Operand(CapInt(gen.root())) : Operand(gen.next());
    const BinOp op = kOps[gen.below(7)];
    auto out = capint_binop(model, CapInt(l), r, op);
    ASSERT_TRUE(out.ok());
    const Capability &res = out->value.capability();
    EXPECT_EQ(res.base, l.base);
    EXPECT_EQ(res.top, l.top);
    EXPECT_EQ(res.perms, l.perms);
    EXPECT_EQ(res.seal, l.seal);
    EXPECT_TRUE(res.tag);
    EXPECT_EQ(out->advisories.size(), std::holds_alternative<CapInt>(r) ? 1u : 0u);
  }
}

TEST(CapabilityPropertyTest, WideShiftsYieldZero) {
  Gen gen(23);
  const CapabilityModel model(SealSemanticsMode::kFaultOnModify);
  for (int i = 0; i < 1000; ++i) {
    const uint64_t k = 64 + gen.below(1000);
    auto out = capint_apply(model, CapInt(gen.root()), k, gen.coin() ? BinOp::kShl : BinOp::kShr);
    ASSERT_TRUE(out.ok());
    EXPECT_EQ(out->address(), 0u);
  }
}

TEST(CapabilityPropertyTest, FaultOrderOnMultiplyBrokenInputs) {
  Gen gen(24);
  for (int i = 0; i < 2000; ++i) {
    Capability cap = gen.root();
    const bool bad_tag = gen.coin();
    const bool bad_seal = gen.coin();
    const Permission kind =
        std::vector<Permission>{Permission::kLoad, Permission::kStore,
                                Permission::kExecute}[gen.below(3)];
    const bool bad_perm = gen.coin();
    const bool bad_bounds = gen.coin();
    cap.tag = !bad_tag;
    cap.seal = bad_seal ? SealState::kSealedEntry : SealState::kUnsealed;
    cap.perms = bad_perm ? PermissionSet::all().without({kind}) : PermissionSet::all();
    const uint64_t len = static_cast<uint64_t>(cap.length());
    cap.address = bad_bounds ? static_cast<Addr>(cap.top) : cap.base + (len ? gen.below(len) : 0);
    const bool bounds_fail = bad_bounds || len == 0 ||
                             Top{cap.address} + 1 > cap.top;
    const Status st = check_access(cap, kind, 1);
    if (bad_tag) {
      ASSERT_FALSE(st.ok());
      EXPECT_EQ(st.error().kind, FaultKind::kTag);
    } else if (bad_seal) {
      ASSERT_FALSE(st.ok());
      EXPECT_EQ(st.error().kind, FaultKind::kSeal);
    } else if (bad_perm) {
      ASSERT_FALSE(st.ok());
      EXPECT_EQ(st.error().kind, FaultKind::kPermission);
    } else if (bounds_fail) {
      ASSERT_FALSE(st.ok());
      EXPECT_EQ(st.error().kind, FaultKind::kBounds);
    } else {
      EXPECT_TRUE(st.ok());
    }
  }
}

// ---- tagged memory -------------------------------------------------------

constexpr uint64_t kMemSize = 4 * kPageSize;

void expect_coherent(const TaggedMemory &mem) {
  const auto raw = mem.raw_bytes();
  for (uint64_t g = 0; g < mem.granule_count(); ++g) {
    if (!mem.granule_tagged(g)) continue;
    const auto pattern = mem.granule_capability(g).bit_pattern();
    for (size_t i = 0; i < pattern.size(); ++i) {
      ASSERT_EQ(raw[g * kGranuleSize + i], pattern[i]) << "granule " << g;
    }
  }
}

TEST(TaggedMemoryPropertyTest, TagsCoherentAndClearedByByteStores) {
  Gen gen(31);
  const Capability root = make_root(0, kMemSize, {Permission::kLoad, Permission::kStore});
  for (int run = 0; run < 50; ++run) {
    TaggedMemory mem(kMemSize);
    // Granules last written by store_cap, and whether a byte store hit them since.
    std::map<uint64_t, bool> cap_stored;
    for (int step = 0; step < 200; ++step) {
      const uint64_t g = gen.below(kMemSize / kGranuleSize);
      switch (gen.below(4)) {
        case 0: {
          const Capability v = gen.root();
          ASSERT_TRUE(mem.store_cap(root, g * kGranuleSize, v).ok());
          cap_stored[g] = v.tag;
          break;
        }
        case 1: {
          const uint64_t addr = g * kGranuleSize + gen.below(kGranuleSize);
          const uint64_t len = 1 + gen.below(std::min<uint64_t>(40, kMemSize - addr));
          ASSERT_TRUE(mem.store_bytes(root, addr, gen.bytes(len)).ok());
          for (uint64_t h = addr / kGranuleSize; h <= (addr + len - 1) / kGranuleSize; ++h) {
            cap_stored[h] = false;
          }
          break;
        }
        case 2: {
          const uint64_t dst = gen.below(kMemSize / kGranuleSize);
          const uint64_t n = 1 + gen.below(4);
          if (std::max(g, dst) + n > kMemSize / kGranuleSize) break;
          std::vector<bool> src_tags;
          for (uint64_t k = 0; k < n; ++k) src_tags.push_back(mem.granule_tagged(g + k));
          ASSERT_TRUE(mem.copy(root, dst * kGranuleSize, g * kGranuleSize, n * kGranuleSize).ok());
          for (uint64_t k = 0; k < n; ++k) cap_stored[dst + k] = src_tags[k];
          break;
        }
        default:
          (void)mem.load_cap(root, g * kGranuleSize);
          break;
      }
      expect_coherent(mem);
      for (uint64_t h = 0; h < mem.granule_count(); ++h) {
        const auto it = cap_stored.find(h);
        const bool want = it != cap_stored.end() && it->second;
        ASSERT_EQ(mem.granule_tagged(h), want) << "run " << run << " step " << step
                                               << " granule " << h;
      }
    }
  }
}

TEST(TaggedMemoryPropertyTest, ProtCapCycleIsTagNeutral) {
  Gen gen(32);
  const Capability root = make_root(0, kMemSize, {Permission::kLoad, Permission::kStore});
  for (int run = 0; run < 100; ++run) {
    TaggedMemory mem(kMemSize);
    for (int i = 0; i < 40; ++i) {
      ASSERT_TRUE(mem.store_cap(root, gen.below(kMemSize / kGranuleSize) * kGranuleSize,
                                gen.root()).ok());
    }
    std::vector<Capability> before;
    for (uint64_t g = 0; g < mem.granule_count(); ++g) {
      if (mem.granule_tagged(g)) before.push_back(mem.granule_capability(g));
    }
    const Addr page = gen.below(kMemSize / kPageSize) * kPageSize;
    const uint64_t pages = 1 + gen.below((kMemSize - page) / kPageSize);
    mem.mprotect({page, pages * kPageSize, gen.coin() ? PermissionSet::none()
                                                      : PermissionSet{Permission::kLoad},
                  gen.coin()});
    mem.mprotect({page, pages * kPageSize, {Permission::kLoad, Permission::kStore}, true});
    std::vector<Capability> after;
    for (uint64_t g = 0; g < mem.granule_count(); ++g) {
      if (mem.granule_tagged(g)) after.push_back(mem.granule_capability(g));
    }
    EXPECT_EQ(after, before) << "run " << run;
  }
}

}  // namespace
}  // namespace capsim
