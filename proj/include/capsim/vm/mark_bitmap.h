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

#ifndef CAPSIM_VM_MARK_BITMAP_H_
#define CAPSIM_VM_MARK_BITMAP_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "capsim/capint.h"

namespace capsim::vm {

// GC mark bitmap as an array of integer words.
//
// Bit i lives at word i / S, offset i % S, where S is the word size in bits
// as the client computes it. For kPaddedCap words S is the storage size
// (128), so offsets of 64 and above shift past the value width and the
// update is lost. For kExact64 words S is 64 and every bit is addressable.
class MarkBitmap {
 public:
  MarkBitmap(WordModel model, size_t bit_count);

  WordModel model() const { return model_; }
  size_t bit_count() const { return bit_count_; }
  unsigned bits_per_word() const;
  size_t word_count() const;

  // bitmap[i / S] |= 1 << (i % S)
  void set(size_t i);
  // (bitmap[i / S] >> (i % S)) & 1
  bool test(size_t i) const;
  void clear();

  // Indices whose bit is actually present in the value bits of a word.
  std::vector<size_t> marked() const;

 private:
  WordModel model_;
  size_t bit_count_;
  std::vector<CapInt> padded_words_;
  std::vector<uint64_t> exact_words_;
};

}  // namespace capsim::vm

#endif  // CAPSIM_VM_MARK_BITMAP_H_
