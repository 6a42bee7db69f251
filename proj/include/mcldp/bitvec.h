// Copyright 2026 The mcldp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MCLDP_BITVEC_H_
#define MCLDP_BITVEC_H_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace mcldp {

// Fixed-length bit sequence packed into 64-bit words.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size)
      : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool Get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void Set(std::size_t i, bool value = true) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  std::size_t PopCount() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  // Low `size()` bits as an integer; requires size() <= 64.
  std::uint64_t ToWord() const { return words_.empty() ? 0 : words_[0]; }
  static BitVector FromWord(std::uint64_t word, std::size_t size) {
    BitVector v(size);
    if (size > 0) {
      v.words_[0] = size >= 64 ? word : word & ((std::uint64_t{1} << size) - 1);
    }
    return v;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

  // "0101..." with position 0 first.
  std::string ToString() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
      if (Get(i)) s[i] = '1';
    }
    return s;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace mcldp

#endif  // MCLDP_BITVEC_H_
