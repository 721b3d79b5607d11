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

#include "capsim/capint.h"

#include <gtest/gtest.h>

#include <stdexcept>

#include "capsim/capability.h"

namespace capsim {
namespace {

const CapabilityModel kTrap(SealSemanticsMode::kFaultOnModify);
const CapabilityModel kLax(SealSemanticsMode::kInvalidateOnModify);

constexpr PermissionSet kRW{Permission::kLoad, Permission::kStore};

CapInt sealed_capint(Addr addr) {
  Capability code = make_root(0x4000, 0x1000, {Permission::kExecute});
  code.address = addr;
  return CapInt(kTrap.seal_entry(code));
}

TEST(WordModelTest, Widths) {
  EXPECT_EQ(storage_bytes(WordModel::kPaddedCap), 16u);
  EXPECT_EQ(storage_bits(WordModel::kPaddedCap), 128u);
  EXPECT_EQ(value_bits(WordModel::kPaddedCap), 64u);
  EXPECT_EQ(storage_bytes(WordModel::kExact64), 8u);
  EXPECT_EQ(value_bits(WordModel::kExact64), 64u);
}

TEST(CapIntBinopTest, AddInheritsLeftMetadata) {
  const Capability src = make_root(0x1000, 0x100, kRW);
  auto out = capint_binop(kTrap, CapInt(src), uint64_t{0x20}, BinOp::kAdd);
  ASSERT_TRUE(out.ok());
  const Capability &res = out->value.capability();
  EXPECT_TRUE(res.tag);
  EXPECT_EQ(res.address, 0x1020u);
  EXPECT_EQ(res.base, src.base);
  EXPECT_EQ(res.top, src.top);
  EXPECT_EQ(res.perms, src.perms);
  EXPECT_TRUE(out->advisories.empty());
}

TEST(CapIntBinopTest, IntegerLeftInheritsRightMetadata) {
  const Capability src = make_root(0x1000, 0x100, kRW);
  auto out = capint_binop(kTrap, uint64_t{0x10}, CapInt(src), BinOp::kAdd);
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(out->value.address(), 0x1010u);
  EXPECT_EQ(out->value.capability().base, src.base);
}

TEST(CapIntBinopTest, SealedSubtractionFaults) {
  auto out = capint_binop(kTrap, sealed_capint(0x4010), sealed_capint(0x4000), BinOp::kSub);
  ASSERT_FALSE(out.ok());
  EXPECT_EQ(out.error().kind, FaultKind::kSeal);
}

TEST(CapIntBinopTest, SealedSubtractionInvalidates) {
  auto out = capint_binop(kLax, sealed_capint(0x4010), sealed_capint(0x4000), BinOp::kSub);
  ASSERT_TRUE(out.ok());
  EXPECT_FALSE(out->value.tagged());
  EXPECT_EQ(out->value.address(), 0x10u);
}

TEST(CapIntBinopTest, ShiftPastWidthYieldsZero) {
  Capability src = make_root(0x1000, 0x100, kRW);
  src.address = 0x1001;
  auto out = capint_binop(kTrap, CapInt(src), uint64_t{70}, BinOp::kShl);
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(out->value.address(), 0u);
  auto right = capint_binop(kTrap, CapInt(src), uint64_t{64}, BinOp::kShr);
  ASSERT_TRUE(right.ok());
  EXPECT_EQ(right->value.address(), 0u);
  auto in_range = capint_binop(kTrap, CapInt(src), uint64_t{63}, BinOp::kShl);
  ASSERT_TRUE(in_range.ok());
  EXPECT_EQ(in_range->value.address(), uint64_t{1} << 63);
}

TEST(CapIntBinopTest, TwoCapabilitiesRaiseAnAdvisory) {
  const Capability a = make_root(0x1000, 0x100, kRW);
  const Capability b = make_root(0x8000, 0x100, kRW);
  auto out = capint_binop(kTrap, CapInt(a), CapInt(b), BinOp::kXor);
  ASSERT_TRUE(out.ok());
  ASSERT_EQ(out->advisories.size(), 1u);
  EXPECT_EQ(out->advisories[0], Advisory::kAmbiguousProvenance);
  EXPECT_EQ(out->value.capability().base, a.base);
  EXPECT_EQ(out->value.address(), 0x1000u ^ 0x8000u);
}

TEST(CapIntBinopTest, NoCapabilityOperandIsRejected) {
  EXPECT_THROW((void)capint_binop(kTrap, uint64_t{1}, uint64_t{2}, BinOp::kAdd),
               std::invalid_argument);
}

TEST(ApplyBinopTest, IntegerSemantics) {
  EXPECT_EQ(apply_binop(5, 7, BinOp::kSub), uint64_t(-2));
  EXPECT_EQ(apply_binop(0xf0, 0x3c, BinOp::kAnd), 0x30u);
  EXPECT_EQ(apply_binop(0xf0, 0x0f, BinOp::kOr), 0xffu);
  EXPECT_EQ(apply_binop(1, 200, BinOp::kShl), 0u);
  EXPECT_EQ(apply_binop(0x80, 4, BinOp::kShr), 0x8u);
}

TEST(CastTest, ToInt64) {
  EXPECT_EQ(capint_to_int64(sealed_capint(0x4010)), 0x4010u);
  CapInt untagged = int64_to_capint(0xbeef);
  EXPECT_EQ(capint_to_int64(untagged), 0xbeefu);
  Capability zero = make_root(0, 0x10, kRW);
  EXPECT_EQ(capint_to_int64(CapInt(zero)), 0u);
}

TEST(CastTest, FromInt64) {
  const CapInt v = int64_to_capint(0x2000);
  EXPECT_FALSE(v.tagged());
  EXPECT_EQ(v.address(), 0x2000u);
  EXPECT_EQ(v.capability().length(), Top{0});
  EXPECT_TRUE(v.capability().perms.empty());
  const Status st = check_access(v.capability(), Permission::kLoad, 8);
  ASSERT_FALSE(st.ok());
  EXPECT_EQ(st.error().kind, FaultKind::kTag);
  EXPECT_FALSE(int64_to_capint(0).tagged());
}

TEST(CastTest, RoundTripLosesTheTag) {
  const CapInt v(make_root(0x1000, 0x100, kRW));
  const CapInt back = int64_to_capint(capint_to_int64(v));
  EXPECT_FALSE(back.tagged());
  EXPECT_EQ(back.address(), v.address());
}

}  // namespace
}  // namespace capsim
