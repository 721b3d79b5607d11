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

#include "capsim/capability.h"

#include <gtest/gtest.h>

#include <stdexcept>

#include "capsim/fault.h"

namespace capsim {
namespace {

constexpr PermissionSet kRW{Permission::kLoad, Permission::kStore};
constexpr PermissionSet kLD{Permission::kLoad};

const CapabilityModel kTrap(SealSemanticsMode::kFaultOnModify);
const CapabilityModel kLax(SealSemanticsMode::kInvalidateOnModify);

Capability sealed_code(const CapabilityModel &model) {
  return model.seal_entry(make_root(0x4000, 0x1000, {Permission::kExecute, Permission::kLoad}));
}

TEST(PermissionSetTest, SetAlgebra) {
  EXPECT_TRUE(PermissionSet::none().empty());
  EXPECT_TRUE(kLD.is_subset_of(kRW));
  EXPECT_FALSE(kRW.is_subset_of(kLD));
  EXPECT_EQ((kLD | PermissionSet{Permission::kStore}), kRW);
  EXPECT_EQ(kRW.without(kLD), PermissionSet{Permission::kStore});
  EXPECT_EQ(PermissionSet::from_raw(0xff), PermissionSet::all());
  EXPECT_EQ(kRW.to_string(), "LD|ST");
  EXPECT_EQ(PermissionSet::none().to_string(), "-");
}

TEST(MakeRootTest, DirectConstruction) {
  const Capability cap = make_root(0x1000, 0x1000, kRW);
  EXPECT_TRUE(cap.tag);
  EXPECT_EQ(cap.address, 0x1000u);
  EXPECT_EQ(cap.base, 0x1000u);
  EXPECT_EQ(cap.top, Top{0x2000});
  EXPECT_EQ(cap.perms, kRW);
  EXPECT_FALSE(cap.sealed());
}

TEST(MakeRootTest, WholeAddressSpace) {
  const Capability cap = make_root(0, UINT64_MAX, PermissionSet::all());
  EXPECT_TRUE(cap.tag);
  EXPECT_EQ(cap.top, Top{UINT64_MAX});
}

TEST(MakeRootTest, ZeroLengthFaultsOnEveryAccess) {
  const Capability cap = make_root(0x1000, 0, kLD);
  EXPECT_TRUE(cap.tag);
  const Status st = check_access(cap, Permission::kLoad, 1);
  ASSERT_FALSE(st.ok());
  EXPECT_EQ(st.error().kind, FaultKind::kBounds);
}

TEST(MakeRootTest, OverflowIsAConstructionError) {
  EXPECT_THROW(make_root(2, UINT64_MAX, kLD), std::invalid_argument);
  // A top of exactly 2^64 is representable.
  EXPECT_EQ(make_root(1, UINT64_MAX, kLD).top, kAddressSpaceTop);
}

TEST(SetBoundsTest, Narrowing) {
  auto out = kTrap.set_bounds(make_root(0x1000, 0x1000, kRW), 0x1200, 0x200);
  ASSERT_TRUE(out.ok());
  EXPECT_TRUE(out->tag);
  EXPECT_EQ(out->base, 0x1200u);
  EXPECT_EQ(out->top, Top{0x1400});
  EXPECT_EQ(out->address, 0x1200u);
  EXPECT_EQ(out->perms, kRW);
}

TEST(SetBoundsTest, WideningClearsTheTag) {
  auto narrow = kTrap.set_bounds(make_root(0x1000, 0x1000, kRW), 0x1200, 0x200);
  ASSERT_TRUE(narrow.ok());
  auto wide = kTrap.set_bounds(narrow.value(), 0x1000, 0x1000);
  ASSERT_TRUE(wide.ok());
  EXPECT_FALSE(wide->tag);
  EXPECT_EQ(wide->base, 0x1000u);
  EXPECT_EQ(wide->top, Top{0x2000});
}

TEST(SetBoundsTest, IdentityBounds) {
  Capability cap = make_root(0x1000, 0x1000, kRW);
  cap.address = 0x1800;
  auto out = kTrap.set_bounds(cap, cap.base, static_cast<uint64_t>(cap.length()));
  ASSERT_TRUE(out.ok());
  Capability want = cap;
  want.address = cap.base;
  EXPECT_EQ(out.value(), want);
}

TEST(SetBoundsTest, UntaggedStaysUntagged) {
  Capability cap = make_root(0x1000, 0x1000, kRW);
  cap.tag = false;
  auto out = kTrap.set_bounds(cap, 0x1100, 0x10);
  ASSERT_TRUE(out.ok());
  EXPECT_FALSE(out->tag);
}

TEST(SetBoundsTest, SealedInputFollowsTheMode) {
  auto trapped = kTrap.set_bounds(sealed_code(kTrap), 0x4000, 0x10);
  ASSERT_FALSE(trapped.ok());
  EXPECT_EQ(trapped.error().kind, FaultKind::kSeal);
  auto lax = kLax.set_bounds(sealed_code(kLax), 0x4000, 0x10);
  ASSERT_TRUE(lax.ok());
  EXPECT_FALSE(lax->tag);
}

TEST(RestrictPermsTest, Examples) {
  auto fewer = kTrap.restrict_perms(make_root(0, 0x100, kRW), kLD);
  ASSERT_TRUE(fewer.ok());
  EXPECT_TRUE(fewer->tag);
  EXPECT_EQ(fewer->perms, kLD);

  auto more = kTrap.restrict_perms(make_root(0, 0x100, kLD), kRW);
  ASSERT_TRUE(more.ok());
  EXPECT_FALSE(more->tag);

  const Capability same_in = make_root(0, 0x100, kRW);
  auto same = kTrap.restrict_perms(same_in, kRW);
  ASSERT_TRUE(same.ok());
  EXPECT_EQ(same.value(), same_in);
}

TEST(SetAddressTest, InBoundsMove) {
  auto out = kTrap.set_address(make_root(0x1000, 0x1000, kRW), 0x1ff0);
  ASSERT_TRUE(out.ok());
  EXPECT_TRUE(out->tag);
  EXPECT_EQ(out->address, 0x1ff0u);
}

TEST(SetAddressTest, OutOfBoundsKeepsTagButAccessFaults) {
  auto out = kTrap.set_address(make_root(0x1000, 0x1000, kRW), 0x2000);
  ASSERT_TRUE(out.ok());
  EXPECT_TRUE(out->tag);
  const Status st = check_access(out.value(), Permission::kLoad, 1);
  ASSERT_FALSE(st.ok());
  EXPECT_EQ(st.error().kind, FaultKind::kBounds);
}

TEST(SetAddressTest, SealedFaultOnModify) {
  auto out = kTrap.set_address(sealed_code(kTrap), 0x5000);
  ASSERT_FALSE(out.ok());
  EXPECT_EQ(out.error().kind, FaultKind::kSeal);
}

TEST(SetAddressTest, SealedInvalidateOnModify) {
  auto out = kLax.set_address(sealed_code(kLax), 0x5000);
  ASSERT_TRUE(out.ok());
  EXPECT_FALSE(out->tag);
  EXPECT_EQ(out->address, 0x5000u);
}

TEST(SealEntryTest, Examples) {
  const Capability code = make_root(0x4000, 0x100, {Permission::kExecute});
  const Capability sealed = kTrap.seal_entry(code);
  EXPECT_TRUE(sealed.tag);
  EXPECT_TRUE(sealed.sealed());
  EXPECT_EQ(sealed.base, code.base);
  EXPECT_EQ(sealed.perms, code.perms);

  EXPECT_FALSE(kTrap.seal_entry(make_root(0x4000, 0x100, kLD)).tag);
  Capability untagged = code;
  untagged.tag = false;
  EXPECT_FALSE(kTrap.seal_entry(untagged).tag);
  EXPECT_FALSE(kTrap.seal_entry(sealed).tag);
}

TEST(CheckAccessTest, Examples) {
  Capability cap = make_root(0x1000, 0x1000, kLD);
  cap.address = 0x1ff8;
  Status st = check_access(cap, Permission::kLoad, 16);
  ASSERT_FALSE(st.ok());
  EXPECT_EQ(st.error().kind, FaultKind::kBounds);
  EXPECT_TRUE(check_access(cap, Permission::kLoad, 8).ok());

  Capability untagged = cap;
  untagged.tag = false;
  st = check_access(untagged, Permission::kLoad, 8);
  ASSERT_FALSE(st.ok());
  EXPECT_EQ(st.error().kind, FaultKind::kTag);

  st = check_access(sealed_code(kTrap), Permission::kLoad, 8);
  ASSERT_FALSE(st.ok());
  EXPECT_EQ(st.error().kind, FaultKind::kSeal);

  st = check_access(cap, Permission::kStore, 1);
  ASSERT_FALSE(st.ok());
  EXPECT_EQ(st.error().kind, FaultKind::kPermission);
}

TEST(CheckAccessTest, ZeroSizeIsAPreconditionViolation) {
  EXPECT_THROW((void)check_access(make_root(0, 16, kLD), Permission::kLoad, 0),
               std::invalid_argument);
}

TEST(CheckAccessTest, FaultOrderIsTagSealPermissionBounds) {
  // Fails every check.
  Capability all_bad = sealed_code(kTrap);
  all_bad.tag = false;
  all_bad.address = 0;
  auto kind = [](const Capability &c) {
    return check_access(c, Permission::kStore, 8).error().kind;
  };
  EXPECT_EQ(kind(all_bad), FaultKind::kTag);
  all_bad.tag = true;
  EXPECT_EQ(kind(all_bad), FaultKind::kSeal);
  all_bad.seal = SealState::kUnsealed;
  EXPECT_EQ(kind(all_bad), FaultKind::kPermission);
  all_bad.perms = PermissionSet::all();
  EXPECT_EQ(kind(all_bad), FaultKind::kBounds);
}

TEST(BitPatternTest, AddressInLowWordAndMetadataSensitive) {
  Capability cap = make_root(0x1000, 0x1000, kRW);
  cap.address = 0x1122334455667788;
  const auto bits = cap.bit_pattern();
  for (unsigned i = 0; i < 8; ++i) {
    EXPECT_EQ(bits[i], (cap.address >> (8 * i)) & 0xff) << "byte " << i;
  }
  Capability other = cap;
  other.top = Top{0x1800};
  EXPECT_NE(cap.bit_pattern(), other.bit_pattern());
}

TEST(FaultTest, Names) {
  for (FaultKind k : {FaultKind::kTag, FaultKind::kSeal, FaultKind::kPermission,
                      FaultKind::kBounds, FaultKind::kAlignment}) {
    EXPECT_EQ(parse_fault_kind(fault_kind_name(k)), k);
  }
  EXPECT_EQ(fault_kind_name(FaultKind::kSeal), "SealFault");
  EXPECT_FALSE(parse_fault_kind("NoFault").has_value());
}

TEST(ExpectedTest, ValueOnErrorThrows) {
  FaultOr<int> err = Fault{FaultKind::kTag, "x"};
  EXPECT_FALSE(err.ok());
  EXPECT_THROW((void)err.value(), std::logic_error);
  FaultOr<int> val = 3;
  EXPECT_EQ(val.value(), 3);
  EXPECT_THROW((void)val.error(), std::logic_error);
}

}  // namespace
}  // namespace capsim
