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

#ifndef MCLDP_TOPK_H_
#define MCLDP_TOPK_H_

// Multi-class top-k mining. Every framework runs the same round structure:
// the surviving candidates are partitioned into at most B groups (seeded
// shuffle or binary prefixes), one slice of users reports the group of her
// item (or that it is invalid), the best B/2 groups survive, and a final
// round with singleton groups ranks the remaining items.
//
// PTS (optimized): a fraction a of the users mines a global candidate pool
// and estimates class sizes; the rest are routed to classes by their
// perturbed labels and mine each class separately, finishing with
// correlated perturbation where the class is large enough relative to the
// label noise routed into it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "mcldp/buckets.h"
#include "mcldp/dataset.h"
#include "mcldp/errors.h"
#include "mcldp/estimation.h"
#include "mcldp/frameworks.h"
#include "mcldp/mechanisms.h"
#include "mcldp/rng.h"

namespace mcldp {

struct MiningConfig {
  std::size_t k = 10;
  double a = 0.2;               // phase-1 user fraction
  double b = 2.0;               // noise gate multiplier
  double split_fraction = 0.5;  // label share of the budget
  std::size_t it_f = 0;         // phase-1 rounds; 0 means max(1, IT / 2)

  void Validate(std::size_t items) const {
    if (k == 0) throw ParameterError("k must be >= 1");
    if (k > items) throw ParameterError("k exceeds the item domain");
    if (!(a > 0.0 && a < 1.0)) throw ParameterError("a must lie in (0, 1)");
    if (!(b >= 1.0)) throw ParameterError("b must be >= 1");
    if (!(split_fraction > 0.0 && split_fraction < 1.0)) {
      throw ParameterError("split_fraction must lie in (0, 1)");
    }
  }

  std::size_t PhaseOneRounds(std::size_t items) const {
    if (it_f != 0) return it_f;
    return std::max<std::size_t>(1, IterationCount(items, k) / 2);
  }
};

struct ClassNoiseLevel {
  std::vector<double> estimated_size;  // |D'_C| before clamping
  std::vector<double> collected;       // phase-1 reports carrying label C
  std::vector<bool> feasible_cp;
};

struct RankedItem {
  std::uint32_t item = 0;
  double estimate = 0.0;
  friend bool operator==(const RankedItem&, const RankedItem&) = default;
};

inline constexpr std::size_t kGlobalScope = std::numeric_limits<std::size_t>::max();

// One executed round, for replay and invariant checks.
struct RoundTrace {
  int phase = 0;  // 0 noiseless, 1 candidate generation, 2 classwise
  std::size_t round = 0;
  std::size_t scope = kGlobalScope;  // class index or kGlobalScope
  std::size_t num_groups = 0;
  std::uint64_t shuffle_seed = 0;  // 0 for prefix or singleton grouping
  std::size_t candidates_in = 0;
  std::size_t candidates_out = 0;
  std::size_t users = 0;
  MechanismKind mechanism = MechanismKind::kValidity;
  friend bool operator==(const RoundTrace&, const RoundTrace&) = default;
};

struct TopKResult {
  std::vector<std::vector<RankedItem>> per_class;
  std::vector<RoundTrace> trace;
  ClassNoiseLevel noise;  // filled by PTS pipelines with global candidates
};

// Optimizations of the PTS pipeline. Correlated perturbation needs the class
// sizes estimated during candidate generation.
struct PtsMiningOptions {
  bool global_candidates = true;
  bool shuffling = true;
  bool validity = true;
  bool correlated = true;

  static PtsMiningOptions Optimized() { return {}; }
  static PtsMiningOptions Baseline() { return {false, false, false, false}; }

  void Validate() const {
    if (correlated && !global_candidates) {
      throw ParameterError(
          "correlated perturbation needs global candidate generation");
    }
  }
  friend bool operator==(const PtsMiningOptions&,
                         const PtsMiningOptions&) = default;
};

// Clamps estimates at zero and keeps the k best; ties go to the lower item.
inline std::vector<RankedItem> RankItems(std::vector<RankedItem> items,
                                         std::size_t k) {
  for (auto& r : items) r.estimate = std::max(0.0, r.estimate);
  std::sort(items.begin(), items.end(),
            [](const RankedItem& x, const RankedItem& y) {
              if (x.estimate != y.estimate) return x.estimate > y.estimate;
              return x.item < y.item;
            });
  if (items.size() > k) items.resize(k);
  return items;
}

namespace internal {

inline constexpr std::uint32_t kNoGroup =
    std::numeric_limits<std::uint32_t>::max();

enum TopKTag : std::uint64_t {
  kTagUserOrder = 0x544b0001,
  kTagPhaseOne = 0x544b0002,
  kTagPhaseTwo = 0x544b0003,
  kTagShuffleSeed = 0x544b0004,
  kTagPopulation = 0x544b0005,
  kTagNoiseless = 0x544b0006,
};

inline std::vector<std::uint32_t> AllValues(std::size_t n) {
  std::vector<std::uint32_t> v(n);
  std::iota(v.begin(), v.end(), std::uint32_t{0});
  return v;
}

// Random order of user indices; phases and rounds take contiguous slices.
inline std::vector<std::uint32_t> UserOrder(std::size_t users,
                                            std::uint64_t seed) {
  std::vector<std::uint32_t> order = AllValues(users);
  Rng rng(DeriveSeed(seed, {kTagUserOrder}));
  Shuffle(order, rng);
  return order;
}

// Slice r of `total` items split evenly into `parts`.
inline std::pair<std::size_t, std::size_t> EvenSlice(std::size_t total,
                                                     std::size_t parts,
                                                     std::size_t r) {
  return {total * r / parts, total * (r + 1) / parts};
}

struct GroupLayout {
  std::vector<std::vector<std::uint32_t>> groups;
  std::uint64_t seed = 0;

  std::size_t candidate_count() const {
    std::size_t n = 0;
    for (const auto& g : groups) n += g.size();
    return n;
  }

  // lookup[value] = group index, kNoGroup for non-candidates.
  void Fill(std::vector<std::uint32_t>& lookup) const {
    std::fill(lookup.begin(), lookup.end(), kNoGroup);
    for (std::size_t g = 0; g < groups.size(); ++g) {
      for (std::uint32_t v : groups[g]) lookup[v] = static_cast<std::uint32_t>(g);
    }
  }

  std::vector<std::uint32_t> Survivors(
      const std::vector<std::size_t>& kept) const {
    std::vector<std::uint32_t> out;
    for (std::size_t g : kept) {
      out.insert(out.end(), groups[g].begin(), groups[g].end());
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

inline GroupLayout MakeGroups(const std::vector<std::uint32_t>& candidates,
                              std::size_t budget, bool shuffling,
                              std::size_t bits, std::uint64_t seed,
                              bool singletons) {
  GroupLayout layout;
  if (candidates.empty()) return layout;
  if (singletons || candidates.size() <= budget) {
    std::vector<std::uint32_t> sorted = candidates;
    std::sort(sorted.begin(), sorted.end());
    for (std::uint32_t v : sorted) layout.groups.push_back({v});
  } else if (shuffling) {
    layout.seed = seed;
    layout.groups = ShuffleIntoBuckets(candidates, budget, seed).buckets;
  } else {
    layout.groups = PrefixGroups(candidates, bits, budget);
  }
  return layout;
}

// Server-side tallies of one group of users reporting a value in [0, G) or
// "invalid". Invalid users either substitute a uniform value and report with
// the adaptive mechanism, or report through validity perturbation.
class RoundAggregator {
 public:
  RoundAggregator(std::size_t groups, bool validity, double epsilon)
      : groups_(groups),
        validity_(validity),
        channel_(validity || groups < 2 ? MechanismKind::kOue
                                        : AdaptiveSelect(groups, epsilon),
                 validity ? groups + 1 : groups, epsilon),
        counts_(groups, 0.0) {
    set_bits_.reserve(groups + 1);
  }

  // `group` >= G marks an invalid user.
  void Add(std::size_t group, Rng& rng) {
    users_ += 1.0;
    if (groups_ == 0) return;
    if (!validity_) {
      if (group >= groups_) group = rng.UniformInt(groups_);
      channel_.Report(group, rng, [&](std::size_t j) { counts_[j] += 1.0; });
      return;
    }
    set_bits_.clear();
    PerturbOneHot(std::min(group, groups_), groups_ + 1, channel_.p_th,
                  channel_.q_th, rng,
                  [&](std::size_t j) { set_bits_.push_back(j); });
    if (!set_bits_.empty() && set_bits_.back() == groups_) {
      flag_ += 1.0;
      return;
    }
    for (std::size_t j : set_bits_) counts_[j] += 1.0;
  }

  std::vector<double> Estimates() const {
    std::vector<double> est(groups_, 0.0);
    for (std::size_t g = 0; g < groups_; ++g) {
      est[g] = validity_
                   ? CalibrateVp(counts_[g], flag_, users_, channel_.probs).value
                   : CalibrateStandard(counts_[g], users_, channel_.probs).value;
    }
    return est;
  }

  MechanismKind mechanism() const {
    return validity_ ? MechanismKind::kValidity : channel_.kind;
  }
  const PerturbProbs& probs() const { return channel_.probs; }
  const std::vector<double>& counts() const { return counts_; }
  double users() const { return users_; }

 private:
  std::size_t groups_;
  bool validity_;
  ItemChannel channel_;
  std::vector<double> counts_;
  std::vector<std::size_t> set_bits_;
  double users_ = 0.0;
  double flag_ = 0.0;
};

inline std::vector<RankedItem> ZipEstimates(const GroupLayout& singletons,
                                            const std::vector<double>& est) {
  std::vector<RankedItem> out;
  out.reserve(est.size());
  for (std::size_t g = 0; g < est.size(); ++g) {
    out.push_back({singletons.groups[g].front(), est[g]});
  }
  return out;
}

// Mines one population: value_of(u) returns the user's value in the
// candidate domain, or kNoGroup when she holds nothing eligible. Users are
// split evenly across `rounds`; the last round ranks singleton groups.
// Returns the final candidates with their estimates.
template <typename ValueOf>
std::vector<RankedItem> MinePopulation(
    const std::vector<std::uint32_t>& users, ValueOf&& value_of,
    std::vector<std::uint32_t> candidates, std::size_t domain,
    std::size_t bits, std::size_t budget, std::size_t rounds, double epsilon,
    bool shuffling, bool validity, std::uint64_t seed, std::size_t scope,
    std::vector<RoundTrace>* trace) {
  std::vector<std::uint32_t> lookup(domain, kNoGroup);
  for (std::size_t r = 0; r < rounds; ++r) {
    const bool final_round = r + 1 == rounds;
    const GroupLayout layout = MakeGroups(
        candidates, budget, shuffling, bits,
        DeriveSeed(seed, {kTagShuffleSeed, r, scope}), final_round);
    layout.Fill(lookup);
    const std::size_t g_count = layout.groups.size();
    RoundAggregator agg(g_count, validity, epsilon);
    Rng rng(DeriveSeed(seed, {kTagPopulation, r, scope}));
    const auto [lo, hi] = EvenSlice(users.size(), rounds, r);
    for (std::size_t i = lo; i < hi; ++i) {
      const std::uint32_t v = value_of(users[i]);
      const std::uint32_t g = v == kNoGroup ? kNoGroup : lookup[v];
      agg.Add(g == kNoGroup ? g_count : g, rng);
    }
    const std::vector<double> est = agg.Estimates();
    RoundTrace t{0, r, scope, g_count, layout.seed, candidates.size(), 0,
                 hi - lo, agg.mechanism()};
    if (final_round) {
      t.candidates_out = candidates.size();
      if (trace) trace->push_back(t);
      if (hi == lo) return {};
      return ZipEstimates(layout, est);
    }
    candidates = layout.Survivors(TopGroups(est, budget / 2));
    t.candidates_out = candidates.size();
    if (trace) trace->push_back(t);
  }
  return {};
}

inline void CheckTopKInput(const LabeledDataset& data,
                           const MiningConfig& config, double epsilon) {
  CheckEpsilon(epsilon);
  if (data.size() == 0) throw InputError("dataset is empty");
  config.Validate(data.items());
}

}  // namespace internal

// ---------------------------------------------------------------------------
// PTS pipeline.

struct CandidateResult {
  std::vector<std::uint32_t> candidates;  // ascending
  ClassNoiseLevel noise;
  std::vector<std::uint32_t> remaining_users;
  std::vector<RoundTrace> trace;
};

// Phase 1: the first a * N users of a seeded order, split evenly over it_f
// rounds, prune the global pool with budget 4k|C| (only while it exceeds the
// budget) and report GRR(eps1) labels for class-size estimation.
inline CandidateResult GenerateCandidates(
    const LabeledDataset& data, const MiningConfig& config, double epsilon,
    std::uint64_t seed,
    const PtsMiningOptions& options = PtsMiningOptions::Optimized()) {
  internal::CheckTopKInput(data, config, epsilon);
  if (data.classes() < 2) throw InputError("PTS mining needs two classes");
  const std::size_t c = data.classes(), d = data.items();
  const double eps1 = config.split_fraction * epsilon;
  const double eps2 = epsilon - eps1;
  const PerturbProbs label_probs = GrrProbs(c, eps1);
  const Threshold32 label_keep = label_probs.p_threshold();
  const std::size_t rounds = config.PhaseOneRounds(d);
  const std::vector<std::uint32_t> order =
      internal::UserOrder(data.size(), seed);
  const auto sampled = static_cast<std::size_t>(
      std::floor(config.a * static_cast<double>(data.size())));
  if (sampled < rounds) {
    throw InputError("too few users for " + std::to_string(rounds) +
                     " candidate-generation rounds");
  }
  const std::size_t budget = 4 * config.k * c;
  const std::size_t bits = PrefixBits(d);

  CandidateResult out;
  out.candidates = internal::AllValues(d);
  std::vector<double> label_counts(c, 0.0);
  std::vector<std::uint32_t> lookup(d, internal::kNoGroup);
  for (std::size_t r = 0; r < rounds; ++r) {
    const bool prune = out.candidates.size() > budget;
    internal::GroupLayout layout;
    if (prune) {
      layout = internal::MakeGroups(
          out.candidates, budget, options.shuffling, bits,
          DeriveSeed(seed, {internal::kTagShuffleSeed, 1, r}), false);
      layout.Fill(lookup);
    }
    internal::RoundAggregator agg(layout.groups.size(), options.validity, eps2);
    Rng rng(DeriveSeed(seed, {internal::kTagPhaseOne, r}));
    const auto [lo, hi] = internal::EvenSlice(sampled, rounds, r);
    for (std::size_t i = lo; i < hi; ++i) {
      const LabeledPair& pr = data[order[i]];
      label_counts[GrrSample(pr.label, c, label_keep, rng)] += 1.0;
      if (!prune) continue;
      const std::uint32_t g = lookup[pr.item];
      agg.Add(g == internal::kNoGroup ? layout.groups.size() : g, rng);
    }
    RoundTrace t{1, r, kGlobalScope, layout.groups.size(), layout.seed,
                 out.candidates.size(), out.candidates.size(), hi - lo,
                 agg.mechanism()};
    if (prune) {
      out.candidates = layout.Survivors(TopGroups(agg.Estimates(), budget / 2));
      t.candidates_out = out.candidates.size();
    }
    out.trace.push_back(t);
  }
  const double n1 = static_cast<double>(sampled);
  out.noise.estimated_size.resize(c);
  out.noise.collected = label_counts;
  out.noise.feasible_cp.resize(c);
  for (std::size_t k = 0; k < c; ++k) {
    const double n_hat = EstimateClassCount(label_counts[k], n1, label_probs);
    out.noise.estimated_size[k] = n_hat;
    const double clamped = std::max(0.0, n_hat);
    out.noise.feasible_cp[k] =
        clamped > 0.0 && label_counts[k] <= config.b * clamped;
  }
  out.remaining_users.assign(order.begin() + sampled, order.end());
  return out;
}

// Phase 2: `users` are split evenly over the rounds needed to bring each
// class's pool to 4k, plus a final round. In every round a user reports a
// GRR(eps1) label and is aggregated with the class of that label; her item
// is valid when it is a candidate of that class. The final round of a
// feasible class uses correlated perturbation: a user whose true label
// differs from the routed class is invalid as well.
inline TopKResult ClasswiseTopK(
    const LabeledDataset& data, const std::vector<std::uint32_t>& users,
    const std::vector<std::uint32_t>& candidates, const ClassNoiseLevel& noise,
    const MiningConfig& config, double epsilon, std::uint64_t seed,
    const PtsMiningOptions& options = PtsMiningOptions::Optimized()) {
  internal::CheckTopKInput(data, config, epsilon);
  options.Validate();
  if (candidates.empty()) throw InputError("candidate set is empty");
  const std::size_t c = data.classes(), d = data.items();
  if (c < 2) throw InputError("PTS mining needs two classes");
  if (options.correlated && noise.feasible_cp.size() != c) {
    throw ParameterError("class noise levels missing");
  }
  const double eps1 = config.split_fraction * epsilon;
  const double eps2 = epsilon - eps1;
  const PerturbProbs label_probs = GrrProbs(c, eps1);
  const Threshold32 label_keep = label_probs.p_threshold();
  const std::size_t budget = 4 * config.k;
  const std::size_t bits = PrefixBits(d);
  const std::size_t rounds = PruningRounds(candidates.size(), budget) + 1;

  TopKResult result;
  result.per_class.resize(c);
  result.noise = noise;
  std::vector<std::vector<std::uint32_t>> pool(c, candidates);
  std::vector<std::vector<std::uint32_t>> lookup(
      c, std::vector<std::uint32_t>(d, internal::kNoGroup));
  for (std::size_t r = 0; r < rounds; ++r) {
    const bool final_round = r + 1 == rounds;
    std::vector<internal::GroupLayout> layouts(c);
    std::vector<internal::RoundAggregator> aggs;
    std::vector<bool> cp(c, false);
    aggs.reserve(c);
    for (std::size_t k = 0; k < c; ++k) {
      layouts[k] = internal::MakeGroups(
          pool[k], budget, options.shuffling, bits,
          DeriveSeed(seed, {internal::kTagShuffleSeed, 2, r, k}), final_round);
      layouts[k].Fill(lookup[k]);
      cp[k] = final_round && options.correlated && noise.feasible_cp[k];
      aggs.emplace_back(layouts[k].groups.size(), options.validity || cp[k],
                        eps2);
    }
    Rng rng(DeriveSeed(seed, {internal::kTagPhaseTwo, r}));
    const auto [lo, hi] = internal::EvenSlice(users.size(), rounds, r);
    for (std::size_t i = lo; i < hi; ++i) {
      const LabeledPair& pr = data[users[i]];
      const std::size_t routed = GrrSample(pr.label, c, label_keep, rng);
      std::uint32_t g = lookup[routed][pr.item];
      if (cp[routed] && routed != pr.label) g = internal::kNoGroup;
      const std::size_t groups = layouts[routed].groups.size();
      aggs[routed].Add(g == internal::kNoGroup ? groups : g, rng);
    }
    for (std::size_t k = 0; k < c; ++k) {
      const internal::GroupLayout& layout = layouts[k];
      RoundTrace t{2,
                   r,
                   k,
                   layout.groups.size(),
                   layout.seed,
                   pool[k].size(),
                   pool[k].size(),
                   static_cast<std::size_t>(aggs[k].users()),
                   cp[k] ? MechanismKind::kCorrelated : aggs[k].mechanism()};
      std::vector<double> est = aggs[k].Estimates();
      if (cp[k]) {
        // Valid reports here come from users of class k whose label survived
        // GRR, so the flag-calibrated count estimates p1 * f(k, item). Own
        // class users holding pruned items are flagged too, which the
        // full-domain CP calibrator would misread as valid.
        for (double& e : est) e /= label_probs.p;
      }
      if (final_round) {
        if (aggs[k].users() > 0.0) {
          result.per_class[k] =
              RankItems(internal::ZipEstimates(layout, est), config.k);
        }
      } else if (!layout.groups.empty()) {
        pool[k] = layout.Survivors(TopGroups(est, budget / 2));
        t.candidates_out = pool[k].size();
      }
      result.trace.push_back(t);
    }
  }
  return result;
}

inline TopKResult RunPtsTopK(
    const LabeledDataset& data, double epsilon, const MiningConfig& config,
    std::uint64_t seed,
    const PtsMiningOptions& options = PtsMiningOptions::Optimized()) {
  internal::CheckTopKInput(data, config, epsilon);
  options.Validate();
  if (options.global_candidates) {
    CandidateResult phase1 =
        GenerateCandidates(data, config, epsilon, seed, options);
    TopKResult result =
        ClasswiseTopK(data, phase1.remaining_users, phase1.candidates,
                      phase1.noise, config, epsilon, seed, options);
    result.trace.insert(result.trace.begin(), phase1.trace.begin(),
                        phase1.trace.end());
    return result;
  }
  return ClasswiseTopK(data, internal::UserOrder(data.size(), seed),
                       internal::AllValues(data.items()), ClassNoiseLevel{},
                       config, epsilon, seed, options);
}

// ---------------------------------------------------------------------------
// PTJ and HEC pipelines.

// Mines the joint domain (class bits followed by item bits) with budget
// 4kc at the full budget; each class keeps its k best final candidates.
inline TopKResult RunPtjTopK(const LabeledDataset& data, double epsilon,
                             const MiningConfig& config, std::uint64_t seed,
                             bool shuffling, bool validity) {
  internal::CheckTopKInput(data, config, epsilon);
  const std::size_t c = data.classes(), d = data.items();
  const std::size_t item_bits = PrefixBits(d);
  const std::size_t bits = PrefixBits(c) + item_bits;
  const std::size_t domain = std::size_t{1} << bits;
  std::vector<std::uint32_t> candidates;
  candidates.reserve(c * d);
  for (std::size_t k = 0; k < c; ++k) {
    for (std::size_t i = 0; i < d; ++i) {
      candidates.push_back(static_cast<std::uint32_t>((k << item_bits) | i));
    }
  }
  const std::size_t budget = 4 * config.k * c;
  const std::size_t rounds = PruningRounds(candidates.size(), budget) + 1;
  TopKResult result;
  const std::vector<RankedItem> finals = internal::MinePopulation(
      internal::UserOrder(data.size(), seed),
      [&](std::uint32_t u) {
        return static_cast<std::uint32_t>(
            (std::size_t{data[u].label} << item_bits) | data[u].item);
      },
      std::move(candidates), domain, bits, budget, rounds, epsilon, shuffling,
      validity, seed, kGlobalScope, &result.trace);
  std::vector<std::vector<RankedItem>> split(c);
  const std::uint32_t mask = (std::uint32_t{1} << item_bits) - 1;
  for (const RankedItem& r : finals) {
    split[r.item >> item_bits].push_back({r.item & mask, r.estimate});
  }
  result.per_class.resize(c);
  for (std::size_t k = 0; k < c; ++k) {
    result.per_class[k] = RankItems(std::move(split[k]), config.k);
  }
  return result;
}

// Users hashed into c groups as in RunHec; group C mines class C alone with
// prefix grouping and item substitution for users of other classes.
inline TopKResult RunHecTopK(const LabeledDataset& data, double epsilon,
                             const MiningConfig& config, std::uint64_t seed) {
  internal::CheckTopKInput(data, config, epsilon);
  const std::size_t c = data.classes(), d = data.items();
  const std::uint64_t group_key =
      DeriveSeed(seed, {internal::kTagHecGroup});
  std::vector<std::vector<std::uint32_t>> members(c);
  for (std::uint32_t u : internal::UserOrder(data.size(), seed)) {
    members[internal::HashToRange(Mix64(group_key ^ u), c)].push_back(u);
  }
  const std::size_t budget = 4 * config.k;
  const std::size_t rounds = PruningRounds(d, budget) + 1;
  TopKResult result;
  result.per_class.resize(c);
  for (std::size_t k = 0; k < c; ++k) {
    auto finals = internal::MinePopulation(
        members[k],
        [&](std::uint32_t u) {
          return data[u].label == k ? data[u].item : internal::kNoGroup;
        },
        internal::AllValues(d), d, PrefixBits(d), budget, rounds, epsilon,
        false, false, seed, k, &result.trace);
    result.per_class[k] = RankItems(std::move(finals), config.k);
  }
  return result;
}

enum class TopKFramework {
  kPtsOptimized,
  kPtjOptimized,
  kPtsBaseline,
  kPtjBaseline,
  kHecBaseline,
};

inline std::string ToString(TopKFramework f) {
  switch (f) {
    case TopKFramework::kPtsOptimized:
      return "pts-opt";
    case TopKFramework::kPtjOptimized:
      return "ptj-opt";
    case TopKFramework::kPtsBaseline:
      return "pts-base";
    case TopKFramework::kPtjBaseline:
      return "ptj-base";
    case TopKFramework::kHecBaseline:
      return "hec-base";
  }
  return "unknown";
}

inline TopKFramework ParseTopKFramework(const std::string& name) {
  for (TopKFramework f :
       {TopKFramework::kPtsOptimized, TopKFramework::kPtjOptimized,
        TopKFramework::kPtsBaseline, TopKFramework::kPtjBaseline,
        TopKFramework::kHecBaseline}) {
    if (ToString(f) == name) return f;
  }
  throw ParameterError("unknown top-k framework '" + name + "'");
}

inline TopKResult RunMulticlassTopK(const LabeledDataset& data, double epsilon,
                                    TopKFramework framework,
                                    const MiningConfig& config,
                                    std::uint64_t seed) {
  switch (framework) {
    case TopKFramework::kPtsOptimized:
      return RunPtsTopK(data, epsilon, config, seed,
                        PtsMiningOptions::Optimized());
    case TopKFramework::kPtsBaseline:
      return RunPtsTopK(data, epsilon, config, seed,
                        PtsMiningOptions::Baseline());
    case TopKFramework::kPtjOptimized:
      return RunPtjTopK(data, epsilon, config, seed, true, true);
    case TopKFramework::kPtjBaseline:
      return RunPtjTopK(data, epsilon, config, seed, false, false);
    case TopKFramework::kHecBaseline:
      return RunHecTopK(data, epsilon, config, seed);
  }
  throw ParameterError("unknown top-k framework");
}

// ---------------------------------------------------------------------------
// Single-population baselines over item counts.

struct PrefixExpansionOptions {
  std::size_t budget = 0;  // max groups per round; 0 means 4k
  std::size_t keep = 0;    // groups kept per round; 0 means budget / 2
};

// Noiseless prefix expansion on exact counts: each round groups the pool at
// the deepest prefix level with at most `budget` prefixes and keeps the
// `keep` heaviest; once every group is a single item the top k are returned.
inline std::vector<RankedItem> PrefixExpansionTopK(
    const std::vector<double>& counts, std::size_t k,
    PrefixExpansionOptions options = {}, std::vector<RoundTrace>* trace = nullptr) {
  if (k == 0 || k > counts.size()) {
    throw ParameterError("k must lie in [1, d]");
  }
  const std::size_t budget = options.budget ? options.budget : 4 * k;
  const std::size_t keep = options.keep ? options.keep : budget / 2;
  if (budget < 2 || keep == 0 || 2 * keep > budget) {
    throw ParameterError("prefix expansion needs 1 <= 2 keep <= budget");
  }
  const std::size_t bits = PrefixBits(counts.size());
  std::vector<std::uint32_t> pool = internal::AllValues(counts.size());
  for (std::size_t r = 0;; ++r) {
    const auto groups = PrefixGroups(pool, bits, budget);
    if (groups.size() == pool.size()) {
      std::vector<RankedItem> items;
      for (std::uint32_t v : pool) items.push_back({v, counts[v]});
      if (trace) {
        trace->push_back({0, r, kGlobalScope, groups.size(), 0, pool.size(),
                          pool.size(), 0, MechanismKind::kOue});
      }
      return RankItems(std::move(items), k);
    }
    std::vector<double> scores;
    for (const auto& g : groups) {
      double s = 0.0;
      for (std::uint32_t v : g) s += counts[v];
      scores.push_back(s);
    }
    internal::GroupLayout layout{groups, 0};
    const std::size_t before = pool.size();
    pool = layout.Survivors(TopGroups(scores, keep));
    if (trace) {
      trace->push_back({0, r, kGlobalScope, groups.size(), 0, before,
                        pool.size(), 0, MechanismKind::kOue});
    }
  }
}

// Private prefix expansion over one population ignoring labels: users split
// evenly across rounds, item substitution for pruned items, adaptive
// mechanism at the full budget.
inline std::vector<RankedItem> PrefixExpansionTopK(const LabeledDataset& data,
                                                   std::size_t k,
                                                   double epsilon,
                                                   std::uint64_t seed) {
  internal::CheckEpsilon(epsilon);
  const std::size_t d = data.items();
  if (k == 0 || k > d) throw ParameterError("k must lie in [1, d]");
  const std::size_t budget = 4 * k;
  return RankItems(
      internal::MinePopulation(
          internal::UserOrder(data.size(), seed),
          [&](std::uint32_t u) { return data[u].item; },
          internal::AllValues(d), d, PrefixBits(d), budget,
          PruningRounds(d, budget) + 1, epsilon, false, false, seed,
          kGlobalScope, nullptr),
      k);
}

// Noiseless shuffled mining on exact counts with budget 4k: each round cuts
// the pool into 4k seeded buckets and keeps the 2k heaviest.
inline std::vector<RankedItem> NoiselessShuffledTopK(
    const std::vector<double>& counts, std::size_t k, std::uint64_t seed,
    std::vector<RoundTrace>* trace = nullptr) {
  if (k == 0 || k > counts.size()) {
    throw ParameterError("k must lie in [1, d]");
  }
  const std::size_t budget = 4 * k;
  std::vector<std::uint32_t> pool = internal::AllValues(counts.size());
  for (std::size_t r = 0; pool.size() > budget; ++r) {
    const std::uint64_t round_seed =
        DeriveSeed(seed, {internal::kTagNoiseless, r});
    const BucketPlan plan = ShuffleIntoBuckets(pool, budget, round_seed);
    std::vector<double> scores;
    for (const auto& bucket : plan.buckets) {
      double s = 0.0;
      for (std::uint32_t v : bucket) s += counts[v];
      scores.push_back(s);
    }
    internal::GroupLayout layout{plan.buckets, round_seed};
    const std::size_t before = pool.size();
    pool = layout.Survivors(TopGroups(scores, budget / 2));
    if (trace) {
      trace->push_back({0, r, kGlobalScope, budget, round_seed, before,
                        pool.size(), 0, MechanismKind::kOue});
    }
  }
  std::vector<RankedItem> items;
  for (std::uint32_t v : pool) items.push_back({v, counts[v]});
  return RankItems(std::move(items), k);
}

}  // namespace mcldp

#endif  // MCLDP_TOPK_H_
