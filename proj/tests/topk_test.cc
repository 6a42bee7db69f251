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


#include "mcldp/topk.h"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "mcldp/buckets.h"
#include "mcldp/datagen.h"
#include "mcldp/metrics.h"

namespace mcldp {
namespace {

// ---------------------------------------------------------------------------
// Buckets.

TEST(IterationCountTest, Values) {
  EXPECT_EQ(IterationCount(8, 1), 2u);
  EXPECT_EQ(IterationCount(320, 20), 3u);
  EXPECT_EQ(IterationCount(40, 10), 1u);
  EXPECT_EQ(IterationCount(3, 10), 1u);
  EXPECT_EQ(IterationCount(2048, 10), 7u);  // ceil(log2(51.2)) + 1
  EXPECT_THROW(IterationCount(0, 1), ParameterError);
}

TEST(PruningRoundsTest, HalvesUntilBudget) {
  EXPECT_EQ(PruningRounds(40, 40), 0u);
  EXPECT_EQ(PruningRounds(80, 40), 1u);
  EXPECT_EQ(PruningRounds(2048, 40), 6u);
}

TEST(ShuffleIntoBucketsTest, BalancedAndDeterministic) {
  std::vector<std::uint32_t> c(8);
  std::iota(c.begin(), c.end(), 0u);
  const BucketPlan a = ShuffleIntoBuckets(c, 4, 123);
  const BucketPlan b = ShuffleIntoBuckets(c, 4, 123);
  EXPECT_EQ(a.buckets, b.buckets);
  for (const auto& bucket : a.buckets) EXPECT_EQ(bucket.size(), 2u);
  std::vector<std::uint32_t> ten(10);
  std::iota(ten.begin(), ten.end(), 0u);
  const BucketPlan p = ShuffleIntoBuckets(ten, 4, 5);
  std::multiset<std::size_t> sizes;
  std::set<std::uint32_t> seen;
  for (const auto& bucket : p.buckets) {
    sizes.insert(bucket.size());
    seen.insert(bucket.begin(), bucket.end());
  }
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{2, 2, 3, 3}));
  EXPECT_EQ(seen.size(), 10u);
  EXPECT_EQ(p.BucketOf(99), p.num_buckets);
  EXPECT_THROW(ShuffleIntoBuckets({}, 4, 1), InputError);
}

TEST(ShuffleIntoBucketsTest, PairCoBucketingRate) {
  std::vector<std::uint32_t> c(8);
  std::iota(c.begin(), c.end(), 0u);
  int together = 0;
  constexpr int kSeeds = 100000;
  for (int s = 0; s < kSeeds; ++s) {
    const BucketPlan p = ShuffleIntoBuckets(c, 4, s);
    together += p.BucketOf(2) == p.BucketOf(5);
  }
  EXPECT_NEAR(static_cast<double>(together) / kSeeds, 1.0 / 7.0, 0.01);
}

TEST(PrefixGroupsTest, DeepestLevelWithinBudget) {
  std::vector<std::uint32_t> all(8);
  std::iota(all.begin(), all.end(), 0u);
  EXPECT_EQ(PrefixBits(8), 3u);
  EXPECT_EQ(PrefixBits(9), 4u);
  const auto g = PrefixGroups(all, 3, 4);
  ASSERT_EQ(g.size(), 4u);
  EXPECT_EQ(g[0], (std::vector<std::uint32_t>{0, 1}));
  EXPECT_EQ(g[3], (std::vector<std::uint32_t>{6, 7}));
  EXPECT_EQ(PrefixGroups(all, 3, 8).size(), 8u);
  EXPECT_EQ(PrefixGroups({0, 1, 6, 7}, 3, 2).size(), 2u);
}

TEST(TopGroupsTest, TiesGoToLowerIndex) {
  EXPECT_EQ(TopGroups({1, 5, 5, 0, 5}, 2), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(TopGroups({3, 1}, 5), (std::vector<std::size_t>{0, 1}));
}

// Brute-force oracle independent of the library enumerator: walks every
// perfect matching of n items and counts those where the target's pair is
// strictly among the `keep` heaviest.
void Matchings(std::vector<int>& partner, const std::vector<std::uint64_t>& c,
               std::size_t target, std::size_t keep, std::uint64_t& ok,
               std::uint64_t& total) {
  const auto first = std::find(partner.begin(), partner.end(), -1);
  if (first == partner.end()) {
    ++total;
    const std::uint64_t mine = c[target] + c[partner[target]];
    std::size_t rivals = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const auto j = static_cast<std::size_t>(partner[i]);
      if (i < j && i != target && j != target && c[i] + c[j] >= mine) ++rivals;
    }
    ok += rivals < keep;
    return;
  }
  const auto i = static_cast<std::size_t>(first - partner.begin());
  for (std::size_t j = i + 1; j < c.size(); ++j) {
    if (partner[j] != -1) continue;
    partner[i] = static_cast<int>(j);
    partner[j] = static_cast<int>(i);
    Matchings(partner, c, target, keep, ok, total);
    partner[i] = partner[j] = -1;
  }
}

TEST(ShuffleSuccessProbabilityTest, PathologyShapeIs90Over105) {
  const std::vector<std::uint64_t> counts = PrefixPathologyCounts();
  const Rational r = ShuffleSuccessProbability(counts, 0, 2, 2);
  EXPECT_EQ(r.num, 90u);
  EXPECT_EQ(r.den, 105u);
  EXPECT_NEAR(r.value(), 0.857, 5e-4);
  std::vector<int> partner(8, -1);
  std::uint64_t ok = 0, total = 0;
  Matchings(partner, counts, 0, 2, ok, total);
  EXPECT_EQ(total, 105u);
  EXPECT_EQ(ok, 90u);
  EXPECT_EQ(PairShuffleSuccessClosedForm(8, 1), r);
  const Rational closed = PairShuffleSuccessClosedForm(8, 1);
  EXPECT_EQ(closed.num, 90u);
  EXPECT_EQ(closed.den, 105u);
}

TEST(ShuffleSuccessProbabilityTest, AgreesWithBruteForceOnOtherShapes) {
  const std::vector<std::vector<std::uint64_t>> shapes = {
      {9, 1, 5, 5, 5, 5},
      {7, 0, 0, 4, 4, 4, 4, 4, 4, 4},
      {30, 1, 1, 0, 12, 12, 12, 11},
  };
  for (const auto& c : shapes) {
    for (std::size_t keep : {1, 2}) {
      std::vector<int> partner(c.size(), -1);
      std::uint64_t ok = 0, total = 0;
      Matchings(partner, c, 0, keep, ok, total);
      const Rational r = ShuffleSuccessProbability(c, 0, 2, keep);
      EXPECT_EQ(r.num, ok);
      EXPECT_EQ(r.den, total);
    }
  }
}

TEST(ShuffleSuccessProbabilityTest, NoAdversaryMeansCertainSuccess) {
  const Rational r =
      ShuffleSuccessProbability({20, 5, 11, 11, 11, 11, 11, 11}, 0, 2, 2);
  EXPECT_EQ(r.num, r.den);
  EXPECT_EQ(PairShuffleSuccessClosedForm(8, 0).value(), 1.0);
}

TEST(ShuffleSuccessProbabilityTest, UnsupportedShapes) {
  EXPECT_THROW(ShuffleSuccessProbability({1, 2, 3}, 0, 2, 1), CapacityError);
  EXPECT_THROW(
      ShuffleSuccessProbability(std::vector<std::uint64_t>(14, 1), 0, 2, 1),
      CapacityError);
  EXPECT_THROW(PairShuffleSuccessClosedForm(7, 1), CapacityError);
}

// ---------------------------------------------------------------------------
// Single-population baselines.

std::vector<double> AsDoubles(const std::vector<std::uint64_t>& v) {
  return {v.begin(), v.end()};
}

TEST(PrefixExpansionTest, LosesTheHeadWhenItsPrefixIsLight) {
  // Level 1: prefix 0 totals 32 and prefix 1 totals 47.
  const std::vector<double> counts = {30, 1, 1, 0, 12, 12, 12, 11};
  std::vector<RoundTrace> trace;
  const auto top = PrefixExpansionTopK(counts, 1, {2, 1}, &trace);
  ASSERT_EQ(top.size(), 1u);
  EXPECT_NE(top[0].item, 0u);
  EXPECT_GE(top[0].item, 4u);
  ASSERT_FALSE(trace.empty());
  EXPECT_EQ(trace[0].num_groups, 2u);
  EXPECT_EQ(trace[0].candidates_out, 4u);
  // The wider default budget (4k groups, keep 2k) still finds it here.
  EXPECT_EQ(PrefixExpansionTopK(counts, 1)[0].item, 0u);
}

TEST(PrefixExpansionTest, PathologyInstanceDefeatsDefaultBudget) {
  const auto top = PrefixExpansionTopK(AsDoubles(PrefixPathologyCounts()), 1);
  ASSERT_EQ(top.size(), 1u);
  EXPECT_NE(top[0].item, 0u);
}

TEST(PrefixExpansionTest, ConsistentPrefixesAndNoPressure) {
  const std::vector<double> counts = {50, 40, 3, 2, 9, 8, 1, 0};
  EXPECT_EQ(PrefixExpansionTopK(counts, 1)[0].item, 0u);
  // 4k >= d: a single exact round.
  const auto top = PrefixExpansionTopK(counts, 2);
  ASSERT_EQ(top.size(), 2u);
  EXPECT_EQ(top[0].item, 0u);
  EXPECT_EQ(top[1].item, 1u);
  EXPECT_THROW(PrefixExpansionTopK(counts, 9), ParameterError);
  EXPECT_THROW(PrefixExpansionTopK(counts, 1, {4, 3}), ParameterError);
}

TEST(NoiselessShuffledTest, RecoversPathologyAtSixSevenths) {
  const std::vector<double> counts = AsDoubles(PrefixPathologyCounts());
  int found = 0;
  constexpr int kRuns = 20000;
  for (int s = 0; s < kRuns; ++s) {
    found += NoiselessShuffledTopK(counts, 1, s)[0].item == 0;
  }
  EXPECT_NEAR(static_cast<double>(found) / kRuns, 90.0 / 105.0, 0.01);
}

TEST(PrefixExpansionPrivateTest, FindsDominantItem) {
  Grid<std::uint64_t> g(1, 64);
  for (std::size_t i = 0; i < 64; ++i) g(0, i) = 200;
  g(0, 37) = 20000;
  const auto top = PrefixExpansionTopK(DatasetFromCounts(g), 1, 4.0, 3);
  ASSERT_EQ(top.size(), 1u);
  EXPECT_EQ(top[0].item, 37u);
}

// ---------------------------------------------------------------------------
// Multi-class pipelines.

TEST(RankItemsTest, ClampsAndBreaksTies) {
  const auto r = RankItems({{3, 2.0}, {1, 2.0}, {0, -5.0}, {2, 7.0}}, 3);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].item, 2u);
  EXPECT_EQ(r[1].item, 1u);
  EXPECT_EQ(r[2].item, 3u);
  const auto z = RankItems({{5, -1.0}, {4, -2.0}}, 2);
  EXPECT_EQ(z[0].item, 4u);
  EXPECT_EQ(z[0].estimate, 0.0);
}

TEST(MiningConfigTest, Validation) {
  MiningConfig c;
  EXPECT_NO_THROW(c.Validate(100));
  EXPECT_THROW(c.Validate(5), ParameterError);
  c.a = 1.0;
  EXPECT_THROW(c.Validate(100), ParameterError);
  c = {};
  c.b = 0.5;
  EXPECT_THROW(c.Validate(100), ParameterError);
  c = {};
  EXPECT_EQ(c.PhaseOneRounds(2048), 3u);
  EXPECT_EQ(c.PhaseOneRounds(40), 1u);
  PtsMiningOptions o = PtsMiningOptions::Baseline();
  o.correlated = true;
  EXPECT_THROW(o.Validate(), ParameterError);
  EXPECT_THROW(ParseTopKFramework("pts"), ParameterError);
}

// Three classes over 32 items with well separated heads: class c holds
// 50000, 40000, ..., 10000 users on items 7c, 7c+1, ..., 7c+4.
LabeledDataset SeparatedHeads() {
  Grid<std::uint64_t> g(3, 32);
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t j = 0; j < 5; ++j) g(c, 7 * c + j) = 50000 - 10000 * j;
    for (std::size_t i = 0; i < 32; ++i) g(c, i) += 100;
  }
  return DatasetFromCounts(g);
}

TEST(MulticlassTopKTest, NoiselessLimitIsExact) {
  const LabeledDataset data = SeparatedHeads();
  const ItemLists truth = TruthTopK(data.TrueCounts(), 3);
  MiningConfig config;
  config.k = 3;
  for (TopKFramework f :
       {TopKFramework::kPtsOptimized, TopKFramework::kPtjOptimized,
        TopKFramework::kPtsBaseline, TopKFramework::kPtjBaseline,
        TopKFramework::kHecBaseline}) {
    const TopKResult r = RunMulticlassTopK(data, 50.0, f, config, 17);
    EXPECT_EQ(ItemsOf(r.per_class), truth) << ToString(f);
  }
}

TEST(MulticlassTopKTest, EveryUserReportsOnce) {
  const LabeledDataset data = SeparatedHeads();
  MiningConfig config;
  config.k = 2;
  for (const PtsMiningOptions& o :
       {PtsMiningOptions::Optimized(), PtsMiningOptions::Baseline()}) {
    const TopKResult r = RunPtsTopK(data, 2.0, config, 8, o);
    std::size_t users = 0;
    for (const RoundTrace& t : r.trace) users += t.users;
    EXPECT_EQ(users, data.size());
  }
}

TEST(MulticlassTopKTest, ShuffledRoundsHalveThePool) {
  SynSpec spec = DefaultSynSpec(SynKind::kSyn34);
  spec.total = 100000;
  const LabeledDataset data = GenerateDataset(spec);
  const TopKResult r = RunPtsTopK(data, 4.0, MiningConfig{}, 3);
  std::size_t shuffled = 0;
  for (const RoundTrace& t : r.trace) {
    if (t.shuffle_seed == 0 || t.candidates_out == t.candidates_in) continue;
    ++shuffled;
    // Balanced buckets: the kept half holds between floor and ceil of the
    // bucket size per bucket.
    const std::size_t lo = t.candidates_in / t.num_groups;
    const std::size_t hi = (t.candidates_in + t.num_groups - 1) / t.num_groups;
    EXPECT_GE(t.candidates_out, lo * (t.num_groups / 2));
    EXPECT_LE(t.candidates_out, hi * (t.num_groups / 2));
  }
  EXPECT_GT(shuffled, 0u);
}

TEST(MulticlassTopKTest, ReplayIsIdentical) {
  SynSpec spec = DefaultSynSpec(SynKind::kSyn34);
  spec.total = 50000;
  const LabeledDataset data = GenerateDataset(spec);
  const TopKResult a = RunPtsTopK(data, 4.0, MiningConfig{}, 21);
  const TopKResult b = RunPtsTopK(data, 4.0, MiningConfig{}, 21);
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(ItemsOf(a.per_class), ItemsOf(b.per_class));
  const TopKResult c = RunPtsTopK(data, 4.0, MiningConfig{}, 22);
  EXPECT_NE(a.trace, c.trace);
}

TEST(GenerateCandidatesTest, NoiselessSingleRoundKeepsEverything) {
  const LabeledDataset data = SeparatedHeads();
  MiningConfig config;
  config.k = 3;  // 4 k c = 36 >= 32 items
  const CandidateResult r = GenerateCandidates(data, config, 50.0, 2);
  EXPECT_EQ(r.candidates.size(), 32u);
  ASSERT_EQ(r.trace.size(), 1u);
  // The sampled fifth of users reports labels; GRR at eps 25 is exact.
  const std::size_t sampled = data.size() - r.remaining_users.size();
  EXPECT_EQ(sampled, static_cast<std::size_t>(0.2 * data.size()));
  for (std::size_t c = 0; c < 3; ++c) {
    EXPECT_NEAR(r.noise.estimated_size[c], r.noise.collected[c], 1e-6);
  }
  EXPECT_DOUBLE_EQ(std::accumulate(r.noise.collected.begin(),
                                   r.noise.collected.end(), 0.0),
                   static_cast<double>(sampled));
  for (bool f : r.noise.feasible_cp) EXPECT_TRUE(f);
}

TEST(GenerateCandidatesTest, ClassSizeEstimatesAreUnbiased) {
  const LabeledDataset data = SeparatedHeads();
  MiningConfig config;
  config.k = 3;
  const std::vector<double> n = data.ClassSizes();
  std::vector<double> sum(3, 0.0), sum_sq(3, 0.0);
  constexpr int kTrials = 300;
  for (int t = 0; t < kTrials; ++t) {
    const CandidateResult r = GenerateCandidates(data, config, 1.0, 100 + t);
    for (std::size_t c = 0; c < 3; ++c) {
      // Estimates cover the sampled a N users; scale back to the population.
      const double x = r.noise.estimated_size[c] / config.a;
      sum[c] += x;
      sum_sq[c] += x * x;
    }
  }
  for (std::size_t c = 0; c < 3; ++c) {
    const double mean = sum[c] / kTrials;
    const double se =
        std::sqrt((sum_sq[c] - kTrials * mean * mean) / (kTrials - 1) / kTrials);
    // The sample itself is a random fifth, which adds hypergeometric spread
    // already contained in the empirical standard error.
    EXPECT_NEAR(mean, n[c], 3.0 * se) << c;
  }
}

TEST(GenerateCandidatesTest, GlobalHeadSurvivesPhaseOne) {
  SynSpec spec = DefaultSynSpec(SynKind::kSyn34);
  spec.total = 100000;
  const LabeledDataset data = GenerateDataset(spec);
  const Grid<double> counts = data.TrueCounts();
  std::vector<double> totals(data.items(), 0.0);
  for (std::size_t c = 0; c < data.classes(); ++c) {
    for (std::size_t i = 0; i < data.items(); ++i) totals[i] += counts(c, i);
  }
  Grid<double> global(1, data.items());
  global.data() = totals;
  const std::vector<std::uint32_t> head = TruthTopK(global, 10)[0];
  double kept = 0.0;
  constexpr int kTrials = 20;
  for (int t = 0; t < kTrials; ++t) {
    const CandidateResult r = GenerateCandidates(data, MiningConfig{}, 4.0, t);
    for (std::uint32_t v : head) {
      kept += std::binary_search(r.candidates.begin(), r.candidates.end(), v);
    }
  }
  EXPECT_GE(kept / (kTrials * 10.0), 0.9);
}

TEST(ClasswiseTopKTest, SmallClassesGateToValidityOnly) {
  // Class sizes 40%, 30%, 22%, 4%, 4% of N.
  Grid<std::uint64_t> g(5, 64);
  const std::uint64_t sizes[5] = {40000, 30000, 22000, 4000, 4000};
  for (std::size_t c = 0; c < 5; ++c) {
    for (std::size_t i = 0; i < 64; ++i) g(c, i) = sizes[c] / 64;
    g(c, c) += sizes[c] - 64 * (sizes[c] / 64);
  }
  const LabeledDataset data = DatasetFromCounts(g);
  const CandidateResult r = GenerateCandidates(data, MiningConfig{}, 4.0, 12);
  EXPECT_TRUE(r.noise.feasible_cp[0]);
  EXPECT_TRUE(r.noise.feasible_cp[1]);
  EXPECT_FALSE(r.noise.feasible_cp[3]);
  EXPECT_FALSE(r.noise.feasible_cp[4]);
}

TEST(ClasswiseTopKTest, NoUsersGivesEmptyLists) {
  const LabeledDataset data = SeparatedHeads();
  MiningConfig config;
  config.k = 3;
  const TopKResult r =
      ClasswiseTopK(data, {}, internal::AllValues(32), ClassNoiseLevel{},
                    config, 2.0, 1, PtsMiningOptions::Baseline());
  ASSERT_EQ(r.per_class.size(), 3u);
  for (const auto& list : r.per_class) EXPECT_TRUE(list.empty());
}

TEST(ClasswiseTopKTest, NoiselessWithAllItemsIsExact) {
  const LabeledDataset data = SeparatedHeads();
  MiningConfig config;
  config.k = 3;
  // Rounds take contiguous slices, so users must arrive shuffled.
  const std::vector<std::uint32_t> users =
      internal::UserOrder(data.size(), 4);
  const TopKResult r =
      ClasswiseTopK(data, users, internal::AllValues(32), ClassNoiseLevel{},
                    config, 50.0, 4, PtsMiningOptions::Baseline());
  EXPECT_EQ(ItemsOf(r.per_class), TruthTopK(data.TrueCounts(), 3));
}

}  // namespace
}  // namespace mcldp
