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

#ifndef MCLDP_RNG_H_
#define MCLDP_RNG_H_

// Seeded randomness. Every stream is identified by a 64-bit key derived from
// a master seed and an arbitrary path of integers, so trials, users and
// iterations can each own an independent stream regardless of the order in
// which they are executed.

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace mcldp {

// SplitMix64 finalizer.
constexpr std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives a child seed from `seed` and a path of stream indices.
constexpr std::uint64_t DeriveSeed(std::uint64_t seed,
                                   std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = Mix64(seed ^ 0x6a09e667f3bcc908ULL);
  for (std::uint64_t p : path) h = Mix64(h ^ Mix64(p + 0x3c6ef372fe94f82bULL));
  return h;
}

// Probability quantized to a 32-bit threshold. Bias is below 2^-32.
class Threshold32 {
 public:
  constexpr Threshold32() = default;
  explicit Threshold32(double p) {
    if (!(p > 0.0)) {
      t_ = 0;
    } else if (p >= 1.0) {
      t_ = std::uint64_t{1} << 32;
    } else {
      t_ = static_cast<std::uint64_t>(std::llround(std::ldexp(p, 32)));
    }
  }
  // True with probability p given 32 uniform bits.
  constexpr bool Accept(std::uint32_t bits) const { return bits < t_; }

 private:
  std::uint64_t t_ = 0;
};

// xoshiro256++ seeded through SplitMix64. Satisfies
// std::uniform_random_bit_generator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) { Reseed(seed); }

  void Reseed(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& s : s_) {
      x += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      s = z ^ (z >> 31);
    }
    spare_valid_ = false;
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return Next(); }

  std::uint64_t Next() {
    const std::uint64_t result = Rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = Rotl(s_[3], 45);
    return result;
  }

  // 32 uniform bits; every 64-bit draw is split into two halves.
  std::uint32_t Next32() {
    if (spare_valid_) {
      spare_valid_ = false;
      return spare_;
    }
    const std::uint64_t x = Next();
    spare_ = static_cast<std::uint32_t>(x);
    spare_valid_ = true;
    return static_cast<std::uint32_t>(x >> 32);
  }

  bool Bernoulli(const Threshold32& t) { return t.Accept(Next32()); }
  bool Bernoulli(double p) { return Bernoulli(Threshold32(p)); }

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), n > 0. Lemire's multiply-shift with rejection.
  std::uint64_t UniformInt(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(Next()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(Next()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  static constexpr std::uint64_t Rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_{};
  std::uint32_t spare_ = 0;
  bool spare_valid_ = false;
};

// Fisher-Yates shuffle driven by Rng::UniformInt, so the permutation is the
// same on every standard library.
template <typename Container>
void Shuffle(Container& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = rng.UniformInt(i);
    using std::swap;
    swap(v[i - 1], v[j]);
  }
}

}  // namespace mcldp

#endif  // MCLDP_RNG_H_
