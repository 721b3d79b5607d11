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

#include <stdexcept>

namespace capsim {

std::string_view word_model_name(WordModel model) {
  return model == WordModel::kPaddedCap ? "padded-cap" : "exact64";
}

std::string_view binop_name(BinOp op) {
  switch (op) {
    case BinOp::kAdd:
      return "add";
    case BinOp::kSub:
      return "sub";
    case BinOp::kAnd:
      return "and";
    case BinOp::kOr:
      return "or";
    case BinOp::kXor:
      return "xor";
    case BinOp::kShl:
      return "shl";
    case BinOp::kShr:
      return "shr";
  }
  return "?";
}

uint64_t apply_binop(uint64_t lhs, uint64_t rhs, BinOp op) {
  switch (op) {
    case BinOp::kAdd:
      return lhs + rhs;
    case BinOp::kSub:
      return lhs - rhs;
    case BinOp::kAnd:
      return lhs & rhs;
    case BinOp::kOr:
      return lhs | rhs;
    case BinOp::kXor:
      return lhs ^ rhs;
    case BinOp::kShl:
      return rhs >= kCapIntValueWidth ? 0 : lhs << rhs;
    case BinOp::kShr:
      return rhs >= kCapIntValueWidth ? 0 : lhs >> rhs;
  }
  return 0;
}

namespace {

uint64_t operand_value(const Operand &operand) {
  if (const auto *c = std::get_if<CapInt>(&operand)) return c->address();
  return std::get<uint64_t>(operand);
}

}  // namespace

FaultOr<BinopResult> capint_binop(const CapabilityModel &model,
                                  const Operand &lhs, const Operand &rhs,
                                  BinOp op) {
  const auto *lhs_cap = std::get_if<CapInt>(&lhs);
  const auto *rhs_cap = std::get_if<CapInt>(&rhs);
  if (lhs_cap == nullptr && rhs_cap == nullptr) {
    throw std::invalid_argument("capint_binop: no capability operand");
  }
  const CapInt &source = lhs_cap != nullptr ? *lhs_cap : *rhs_cap;
  const uint64_t result =
      apply_binop(operand_value(lhs), operand_value(rhs), op);

  BinopResult out;
  if (lhs_cap != nullptr && rhs_cap != nullptr) {
    out.advisories.push_back(Advisory::kAmbiguousProvenance);
  }
  // Writing the result into a copy of the source is an address update.
  auto derived = model.set_address(source.capability(), result);
  if (!derived.ok()) {
    Fault fault = std::move(derived).error();
    fault.detail = std::string(binop_name(op)) + ": " + fault.detail;
    return fault;
  }
  out.value = CapInt(derived.value());
  return out;
}

FaultOr<CapInt> capint_apply(const CapabilityModel &model, const Operand &lhs,
                             const Operand &rhs, BinOp op) {
  CAPSIM_ASSIGN_OR_RETURN(BinopResult r, capint_binop(model, lhs, rhs, op));
  return r.value;
}

uint64_t capint_to_int64(const CapInt &value) { return value.address(); }

CapInt int64_to_capint(uint64_t value) {
  Capability cap;
  cap.address = value;
  return CapInt(cap);
}

}  // namespace capsim
