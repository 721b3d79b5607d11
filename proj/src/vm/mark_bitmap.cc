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

#include "capsim/vm/mark_bitmap.h"

#include <stdexcept>

#include "capsim/capability.h"
#include "capsim/vm/value.h"

namespace capsim::vm {
namespace {

// Bitmap words are plain integers, never sealed.
const CapabilityModel &word_model() {
  static const CapabilityModel model(SealSemanticsMode::kFaultOnModify);
  return model;
}

}  // namespace

std::string_view variant_name(Variant v) {
  return v == Variant::kBuggy ? "buggy" : "fixed";
}

std::string_view opt_level_name(OptLevel o) {
  return o == OptLevel::kO0 ? "O0" : "O1";
}

MarkBitmap::MarkBitmap(WordModel model, size_t bit_count)
    : model_(model), bit_count_(bit_count) {
  const size_t words = (bit_count + bits_per_word() - 1) / bits_per_word();
  if (model_ == WordModel::kPaddedCap) {
    padded_words_.assign(words, int64_to_capint(0));
  } else {
    exact_words_.assign(words, 0);
  }
}

unsigned MarkBitmap::bits_per_word() const {
  return model_ == WordModel::kPaddedCap ? storage_bits(model_)
                                         : value_bits(model_);
}

size_t MarkBitmap::word_count() const {
  return model_ == WordModel::kPaddedCap ? padded_words_.size()
                                         : exact_words_.size();
}

void MarkBitmap::set(size_t i) {
  if (i >= bit_count_) throw std::out_of_range("MarkBitmap::set");
  const size_t index = i / bits_per_word();
  const uint64_t offset = i % bits_per_word();
  if (model_ == WordModel::kExact64) {
    exact_words_[index] |= uint64_t{1} << offset;
    return;
  }
  const CapabilityModel &m = word_model();
  const CapInt bit = capint_apply(m, int64_to_capint(1), offset, BinOp::kShl).value();
  padded_words_[index] =
      capint_apply(m, padded_words_[index], bit, BinOp::kOr).value();
}

bool MarkBitmap::test(size_t i) const {
  if (i >= bit_count_) throw std::out_of_range("MarkBitmap::test");
  const size_t index = i / bits_per_word();
  const uint64_t offset = i % bits_per_word();
  if (model_ == WordModel::kExact64) {
    return (exact_words_[index] >> offset) & 1;
  }
  const CapabilityModel &m = word_model();
  const CapInt shifted =
      capint_apply(m, padded_words_[index], offset, BinOp::kShr).value();
  return (capint_to_int64(shifted) & 1) != 0;
}

void MarkBitmap::clear() {
  for (auto &w : padded_words_) w = int64_to_capint(0);
  for (auto &w : exact_words_) w = 0;
}

std::vector<size_t> MarkBitmap::marked() const {
  std::vector<size_t> out;
  const size_t stride = bits_per_word();
  for (size_t k = 0; k < word_count(); ++k) {
    const uint64_t bits = model_ == WordModel::kPaddedCap
                              ? capint_to_int64(padded_words_[k])
                              : exact_words_[k];
    for (unsigned b = 0; b < value_bits(model_); ++b) {
      const size_t i = k * stride + b;
      if (i < bit_count_ && ((bits >> b) & 1)) out.push_back(i);
    }
  }
  return out;
}

}  // namespace capsim::vm
