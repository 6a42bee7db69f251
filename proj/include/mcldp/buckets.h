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

#ifndef MCLDP_BUCKETS_H_
#define MCLDP_BUCKETS_H_

// Candidate partitioning for iterative top-k mining: seeded bucket shuffling,
// binary-prefix grouping, round planning, and exact success probabilities of
// one shuffled pruning round.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "mcldp/errors.h"
#include "mcldp/rng.h"

namespace mcldp {

// One pruning round's partition of the candidate pool. `buckets[b]` lists the
// candidates in bucket b; `surviving` holds the bucket ids kept after
// aggregation (empty until the server fills it in).
struct BucketPlan {
  std::uint64_t seed = 0;
  std::size_t num_buckets = 0;
  std::vector<std::vector<std::uint32_t>> buckets;
  std::vector<std::size_t> surviving;

  // Bucket holding `item`, or num_buckets when the item is not a candidate.
  std::size_t BucketOf(std::uint32_t item) const {
    for (std::size_t b = 0; b < buckets.size(); ++b) {
      if (std::find(buckets[b].begin(), buckets[b].end(), item) !=
          buckets[b].end()) {
        return b;
      }
    }
    return num_buckets;
  }
};

// Permutes `candidates` with a stream derived from `seed` and cuts the result
// into `num_buckets` contiguous groups whose sizes differ by at most one.
inline BucketPlan ShuffleIntoBuckets(std::vector<std::uint32_t> candidates,
                                     std::size_t num_buckets,
                                     std::uint64_t seed) {
  if (candidates.empty()) throw InputError("no candidates to shuffle");
  if (num_buckets == 0) throw ParameterError("num_buckets must be >= 1");
  Rng rng(seed);
  Shuffle(candidates, rng);
  BucketPlan plan;
  plan.seed = seed;
  plan.num_buckets = num_buckets;
  plan.buckets.resize(num_buckets);
  const std::size_t n = candidates.size();
  const std::size_t base = n / num_buckets, extra = n % num_buckets;
  std::size_t pos = 0;
  for (std::size_t b = 0; b < num_buckets; ++b) {
    const std::size_t len = base + (b < extra ? 1 : 0);
    plan.buckets[b].assign(candidates.begin() + pos,
                           candidates.begin() + pos + len);
    pos += len;
  }
  return plan;
}

// Number of bits needed to index `domain` values (at least 1).
inline std::size_t PrefixBits(std::size_t domain) {
  std::size_t bits = 1;
  while ((std::size_t{1} << bits) < domain) ++bits;
  return bits;
}

// Groups candidates by their binary prefix at the deepest level that yields
// at most `budget` distinct prefixes. Groups are ordered by prefix value.
// `bits` is the full code length.
inline std::vector<std::vector<std::uint32_t>> PrefixGroups(
    std::vector<std::uint32_t> candidates, std::size_t bits,
    std::size_t budget) {
  if (candidates.empty()) throw InputError("no candidates to group");
  if (budget == 0) throw ParameterError("budget must be >= 1");
  std::sort(candidates.begin(), candidates.end());
  auto distinct_at = [&](std::size_t level) {
    std::size_t count = 0;
    std::uint64_t last = ~std::uint64_t{0};
    for (std::uint32_t v : candidates) {
      const std::uint64_t prefix = std::uint64_t{v} >> (bits - level);
      if (prefix != last) ++count, last = prefix;
    }
    return count;
  };
  std::size_t level = 0;
  while (level < bits && distinct_at(level + 1) <= budget) ++level;
  std::vector<std::vector<std::uint32_t>> groups;
  std::uint64_t last = ~std::uint64_t{0};
  for (std::uint32_t v : candidates) {
    const std::uint64_t prefix =
        level == 0 ? 0 : std::uint64_t{v} >> (bits - level);
    if (groups.empty() || prefix != last) groups.emplace_back();
    groups.back().push_back(v);
    last = prefix;
  }
  return groups;
}

// Indices of the `keep` highest scores; ties go to the lower index. The
// result is in ascending index order.
inline std::vector<std::size_t> TopGroups(const std::vector<double>& scores,
                                          std::size_t keep) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  keep = std::min(keep, order.size());
  std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (scores[a] != scores[b]) return scores[a] > scores[b];
                      return a < b;
                    });
  order.resize(keep);
  std::sort(order.begin(), order.end());
  return order;
}

// IT: ceil(log2(d / (4k))) + 1 when d > 4k, else 1.
inline std::size_t IterationCount(std::size_t d, std::size_t k) {
  if (d == 0 || k == 0) throw ParameterError("IterationCount needs d, k >= 1");
  std::size_t rounds = 1;
  for (std::size_t cap = 4 * k; cap < d; cap *= 2) ++rounds;
  return rounds;
}

// Shuffled pruning rounds needed to bring `candidates` down to at most
// `budget`, assuming the largest buckets survive each time.
inline std::size_t PruningRounds(std::size_t candidates, std::size_t budget) {
  if (budget < 2) throw ParameterError("budget must be >= 2");
  std::size_t rounds = 0;
  while (candidates > budget) {
    const std::size_t largest = (candidates + budget - 1) / budget;
    candidates = std::min(candidates, budget / 2 * largest);
    ++rounds;
  }
  return rounds;
}

// ---------------------------------------------------------------------------
// Exact success probability of one shuffled pruning round.

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  Rational Reduced() const {
    const std::uint64_t g = std::gcd(num, den);
    return g == 0 ? *this : Rational{num / g, den / g};
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    const Rational x = a.Reduced(), y = b.Reduced();
    return x.num == y.num && x.den == y.den;
  }
};

inline constexpr std::size_t kMaxEnumeratedCandidates = 12;

namespace internal {

// Visits every partition of `free` items into unordered groups of size
// `group`; `sums` collects each group's count total.
template <typename Visit>
void EnumerateGroupings(std::vector<std::size_t>& free,
                        const std::vector<std::uint64_t>& counts,
                        std::size_t group, std::vector<std::uint64_t>& sums,
                        std::vector<std::size_t>& owner_group, Visit&& visit) {
  if (free.empty()) {
    visit(sums, owner_group);
    return;
  }
  // The lowest free item anchors the next group, so each unordered
  // partition is produced once.
  const std::size_t anchor = free.front();
  std::vector<std::size_t> rest(free.begin() + 1, free.end());
  std::vector<std::size_t> pick;
  auto choose = [&](auto&& self, std::size_t from) -> void {
    if (pick.size() + 1 == group) {
      std::uint64_t sum = counts[anchor];
      owner_group[anchor] = sums.size();
      for (std::size_t i : pick) {
        sum += counts[i];
        owner_group[i] = sums.size();
      }
      std::vector<std::size_t> remaining;
      for (std::size_t i : rest) {
        if (std::find(pick.begin(), pick.end(), i) == pick.end()) {
          remaining.push_back(i);
        }
      }
      sums.push_back(sum);
      EnumerateGroupings(remaining, counts, group, sums, owner_group, visit);
      sums.pop_back();
      return;
    }
    for (std::size_t j = from; j < rest.size(); ++j) {
      pick.push_back(rest[j]);
      self(self, j + 1);
      pick.pop_back();
    }
  };
  choose(choose, 0);
}

}  // namespace internal

// Probability that the bucket holding `target` is certain to be among the
// `keep` best when the candidates (with noiseless `counts`) are split
// uniformly at random into buckets of `bucket_size`. A partition whose
// outcome would hinge on a tie counts as a failure.
inline Rational ShuffleSuccessProbability(
    const std::vector<std::uint64_t>& counts, std::size_t target,
    std::size_t bucket_size, std::size_t keep) {
  if (counts.empty() || bucket_size == 0 || counts.size() % bucket_size != 0) {
    throw CapacityError("candidates must split into equal buckets");
  }
  if (counts.size() > kMaxEnumeratedCandidates) {
    throw CapacityError("too many candidates to enumerate");
  }
  if (target >= counts.size()) throw ParameterError("target out of range");
  std::vector<std::size_t> free(counts.size());
  std::iota(free.begin(), free.end(), std::size_t{0});
  std::vector<std::uint64_t> sums;
  std::vector<std::size_t> owner(counts.size());
  Rational result{0, 0};
  internal::EnumerateGroupings(
      free, counts, bucket_size, sums, owner,
      [&](const std::vector<std::uint64_t>& s,
          const std::vector<std::size_t>& own) {
        ++result.den;
        const std::uint64_t mine = s[own[target]];
        std::size_t at_least = 0;
        for (std::size_t b = 0; b < s.size(); ++b) {
          if (b != own[target] && s[b] >= mine) ++at_least;
        }
        if (at_least < keep) ++result.num;
      });
  return result;  // over the count of distinct partitions, unreduced
}

// Number of ways to split n items into unordered pairs:
// C(n,2) C(n-2,2) ... C(2,2) / (n/2)!.
inline std::uint64_t PairingCount(std::size_t n) {
  std::uint64_t total = 1;
  for (std::size_t m = n; m >= 2; m -= 2) total *= m - 1;
  return total;
}

// Closed form for pair buckets: the round fails exactly when the target is
// paired with one of `adversarial_partners` specific candidates, leaving the
// other n - 2 candidates free. Unreduced over PairingCount(n).
inline Rational PairShuffleSuccessClosedForm(std::size_t n,
                                             std::size_t adversarial_partners) {
  if (n < 2 || n % 2 != 0 || adversarial_partners > n - 1) {
    throw CapacityError("pair closed form needs an even n >= 2");
  }
  const std::uint64_t total = PairingCount(n);
  return {total - adversarial_partners * PairingCount(n - 2), total};
}

// Eight candidates (codes 000..111) on which prefix grouping at level 2 loses
// item 000: its prefix 00 totals 20 while 01, 10 and 11 total 22 each.
// Shuffled pair buckets lose it only when it is paired with the empty item
// 001, so one pruning round keeps it with probability 6/7 = 90/105.
inline std::vector<std::uint64_t> PrefixPathologyCounts() {
  return {20, 0, 11, 11, 11, 11, 11, 11};
}

}  // namespace mcldp

#endif  // MCLDP_BUCKETS_H_
