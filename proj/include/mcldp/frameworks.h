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

#ifndef MCLDP_FRAMEWORKS_H_
#define MCLDP_FRAMEWORKS_H_

// End-to-end multi-class frequency estimation: HEC (per-class user groups),
// PTJ (joint label x item domain), PTS (separate label and item reports) and
// PTS-CP (separate reports tied by correlated perturbation).
//
// Users are processed in fixed-size blocks; block b draws from the stream
// DeriveSeed(seed, {framework tag, b}), so a table depends only on the
// dataset, the parameters and the seed.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mcldp/dataset.h"
#include "mcldp/errors.h"
#include "mcldp/estimation.h"
#include "mcldp/mechanisms.h"
#include "mcldp/rng.h"

namespace mcldp {

enum class FrequencyFramework { kHec, kPtj, kPts, kPtsCp };

inline std::string ToString(FrequencyFramework f) {
  switch (f) {
    case FrequencyFramework::kHec:
      return "hec";
    case FrequencyFramework::kPtj:
      return "ptj";
    case FrequencyFramework::kPts:
      return "pts";
    case FrequencyFramework::kPtsCp:
      return "pts-cp";
  }
  return "unknown";
}

inline FrequencyFramework ParseFrequencyFramework(const std::string& name) {
  if (name == "hec") return FrequencyFramework::kHec;
  if (name == "ptj") return FrequencyFramework::kPtj;
  if (name == "pts") return FrequencyFramework::kPts;
  if (name == "pts-cp" || name == "ptscp") return FrequencyFramework::kPtsCp;
  throw ParameterError("unknown frequency framework '" + name + "'");
}

inline constexpr FrequencyFramework kAllFrequencyFrameworks[] = {
    FrequencyFramework::kHec, FrequencyFramework::kPtj,
    FrequencyFramework::kPts, FrequencyFramework::kPtsCp};

struct FrequencyTable {
  FrequencyFramework framework = FrequencyFramework::kPtsCp;
  double epsilon = 0.0;
  double eps_label = 0.0;  // zero for single-channel frameworks
  double eps_item = 0.0;
  std::uint64_t seed = 0;
  Grid<double> raw;         // per-position tallies
  Grid<double> calibrated;  // unbiased estimates, possibly negative
  std::vector<double> class_counts;
  // Report length in bits (OUE style) or 1 for categorical reports.
  std::size_t report_bits = 0;
};

inline constexpr std::size_t kUserBlock = 4096;

namespace internal {

enum StreamTag : std::uint64_t {
  kTagHecGroup = 0x4845430001,
  kTagHec = 0x4845430002,
  kTagPtj = 0x50544a0001,
  kTagPts = 0x5054530001,
  kTagPtsCp = 0x5054530002,
};

// Calls body(user_index, rng) for every user, with a fresh stream per block.
template <typename Body>
void ForEachUserBlock(std::size_t users, std::uint64_t seed, std::uint64_t tag,
                      Body&& body) {
  for (std::size_t start = 0, block = 0; start < users;
       start += kUserBlock, ++block) {
    Rng rng(DeriveSeed(seed, {tag, block}));
    const std::size_t end = std::min(users, start + kUserBlock);
    for (std::size_t u = start; u < end; ++u) body(u, rng);
  }
}

// Uniform in [0, n) from a 64-bit hash.
inline std::size_t HashToRange(std::uint64_t h, std::size_t n) {
  return static_cast<std::size_t>(
      (static_cast<unsigned __int128>(h) * n) >> 64);
}

// Perturbs `value` in [0, domain) with GRR or OUE and tallies into
// counts[offset + j] for each reported position j.
struct ItemChannel {
  MechanismKind kind = MechanismKind::kOue;
  std::size_t domain = 0;
  PerturbProbs probs;
  Threshold32 p_th, q_th;

  ItemChannel(MechanismKind k, std::size_t d, double epsilon)
      : kind(k), domain(d) {
    if (domain < 2) kind = MechanismKind::kOue;  // GRR needs two values
    probs = kind == MechanismKind::kGrr ? GrrProbs(d, epsilon)
                                        : OueProbs(epsilon);
    p_th = probs.p_threshold();
    q_th = probs.q_threshold();
  }

  template <typename Sink>
  void Report(std::size_t value, Rng& rng, Sink&& on_set) const {
    if (kind == MechanismKind::kGrr) {
      on_set(GrrSample(value, domain, p_th, rng));
    } else {
      PerturbOneHot(value, domain, p_th, q_th, rng, on_set);
    }
  }

  std::size_t bits() const {
    return kind == MechanismKind::kGrr ? 1 : domain;
  }
};

inline void CheckPipelineInput(const LabeledDataset& data, double epsilon) {
  CheckEpsilon(epsilon);
  if (data.size() == 0) throw InputError("dataset is empty");
}

}  // namespace internal

// Users are hashed into c groups; group g estimates class g. A user whose
// label differs from her group substitutes a uniform random item. Items are
// perturbed with the adaptive mechanism at the full budget.
inline FrequencyTable RunHec(const LabeledDataset& data, double epsilon,
                             std::uint64_t seed) {
  internal::CheckPipelineInput(data, epsilon);
  const std::size_t c = data.classes(), d = data.items();
  const internal::ItemChannel channel(AdaptiveSelect(d, epsilon), d, epsilon);
  FrequencyTable t;
  t.framework = FrequencyFramework::kHec;
  t.epsilon = epsilon;
  t.seed = seed;
  t.raw = Grid<double>(c, d);
  t.report_bits = channel.bits();
  const std::uint64_t group_key =
      DeriveSeed(seed, {internal::kTagHecGroup});
  internal::ForEachUserBlock(
      data.size(), seed, internal::kTagHec, [&](std::size_t u, Rng& rng) {
        const LabeledPair& pr = data[u];
        const std::size_t group = internal::HashToRange(Mix64(group_key ^ u), c);
        const std::size_t item =
            pr.label == group ? pr.item : rng.UniformInt(d);
        channel.Report(item, rng,
                       [&](std::size_t j) { t.raw(group, j) += 1.0; });
      });
  const double n_users = static_cast<double>(data.size());
  t.calibrated = Grid<double>(c, d);
  t.class_counts.assign(c, 0.0);
  for (std::size_t g = 0; g < c; ++g) {
    for (std::size_t i = 0; i < d; ++i) {
      t.calibrated(g, i) =
          CalibrateHec(t.raw(g, i), n_users, static_cast<double>(c),
                       channel.probs)
              .value;
    }
    t.class_counts[g] = t.calibrated.RowSum(g);
  }
  return t;
}

// Each pair (C, I) is the value C * d + I of a c * d domain, perturbed with
// the adaptive mechanism at the full budget.
inline FrequencyTable RunPtj(const LabeledDataset& data, double epsilon,
                             std::uint64_t seed) {
  internal::CheckPipelineInput(data, epsilon);
  const std::size_t c = data.classes(), d = data.items();
  const std::size_t domain = c * d;
  if (domain < 2) throw InputError("PTJ needs c * d >= 2");
  const internal::ItemChannel channel(AdaptiveSelect(domain, epsilon), domain,
                                      epsilon);
  FrequencyTable t;
  t.framework = FrequencyFramework::kPtj;
  t.epsilon = epsilon;
  t.seed = seed;
  t.raw = Grid<double>(c, d);
  t.report_bits = channel.bits();
  std::vector<double>& flat = t.raw.data();
  internal::ForEachUserBlock(
      data.size(), seed, internal::kTagPtj, [&](std::size_t u, Rng& rng) {
        const LabeledPair& pr = data[u];
        channel.Report(pr.label * d + pr.item, rng,
                       [&](std::size_t j) { flat[j] += 1.0; });
      });
  const double n_users = static_cast<double>(data.size());
  t.calibrated = Grid<double>(c, d);
  for (std::size_t j = 0; j < domain; ++j) {
    t.calibrated.data()[j] =
        CalibrateStandard(flat[j], n_users, channel.probs).value;
  }
  t.class_counts.assign(c, 0.0);
  for (std::size_t g = 0; g < c; ++g) t.class_counts[g] = t.calibrated.RowSum(g);
  return t;
}

// Label through GRR(eps1), item through `item_mechanism`(eps2). OUE is the
// default item mechanism; GRR is accepted as an override.
inline FrequencyTable RunPts(const LabeledDataset& data, double eps1,
                             double eps2, std::uint64_t seed,
                             MechanismKind item_mechanism = MechanismKind::kOue) {
  internal::CheckPipelineInput(data, eps1);
  internal::CheckEpsilon(eps2);
  if (item_mechanism != MechanismKind::kOue &&
      item_mechanism != MechanismKind::kGrr) {
    throw ParameterError("PTS item mechanism must be OUE or GRR");
  }
  if (data.classes() < 2) throw InputError("PTS needs at least two classes");
  const std::size_t c = data.classes(), d = data.items();
  const PerturbProbs label_probs = GrrProbs(c, eps1);
  const Threshold32 label_keep = label_probs.p_threshold();
  const internal::ItemChannel channel(item_mechanism, d, eps2);
  FrequencyTable t;
  t.framework = FrequencyFramework::kPts;
  t.epsilon = eps1 + eps2;
  t.eps_label = eps1;
  t.eps_item = eps2;
  t.seed = seed;
  t.raw = Grid<double>(c, d);
  t.report_bits = channel.bits();
  std::vector<double> label_counts(c, 0.0);
  internal::ForEachUserBlock(
      data.size(), seed, internal::kTagPts, [&](std::size_t u, Rng& rng) {
        const LabeledPair& pr = data[u];
        const std::size_t label = GrrSample(pr.label, c, label_keep, rng);
        label_counts[label] += 1.0;
        channel.Report(pr.item, rng,
                       [&](std::size_t j) { t.raw(label, j) += 1.0; });
      });
  const double n_users = static_cast<double>(data.size());
  t.calibrated = Grid<double>(c, d);
  t.class_counts.assign(c, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    const double item_sum = t.raw.ColSum(i);
    for (std::size_t g = 0; g < c; ++g) {
      t.calibrated(g, i) = CalibratePts(t.raw(g, i), label_counts[g], item_sum,
                                        n_users, label_probs, channel.probs)
                               .value;
    }
  }
  for (std::size_t g = 0; g < c; ++g) {
    t.class_counts[g] = EstimateClassCount(label_counts[g], n_users, label_probs);
  }
  return t;
}

// Every user runs correlated perturbation with eps1 = split * epsilon and
// eps2 = epsilon - eps1. A report adds to row `perturbed label` for every set
// item bit, but only when its validity flag is clear.
inline FrequencyTable RunPtsCp(const LabeledDataset& data, double epsilon,
                               std::uint64_t seed, double split_fraction = 0.5) {
  internal::CheckPipelineInput(data, epsilon);
  if (!(split_fraction > 0.0 && split_fraction < 1.0)) {
    throw ParameterError("split_fraction must lie in (0, 1)");
  }
  if (data.classes() < 2) throw InputError("PTS-CP needs at least two classes");
  const std::size_t c = data.classes(), d = data.items();
  const double eps1 = split_fraction * epsilon;
  const double eps2 = epsilon - eps1;
  const PerturbProbs label_probs = GrrProbs(c, eps1);
  const PerturbProbs item_probs = OueProbs(eps2);
  const Threshold32 label_keep = label_probs.p_threshold();
  const Threshold32 p_th = item_probs.p_threshold();
  const Threshold32 q_th = item_probs.q_threshold();
  FrequencyTable t;
  t.framework = FrequencyFramework::kPtsCp;
  t.epsilon = epsilon;
  t.eps_label = eps1;
  t.eps_item = eps2;
  t.seed = seed;
  t.raw = Grid<double>(c, d);
  t.report_bits = d + 1;
  std::vector<double> label_counts(c, 0.0);
  std::vector<std::size_t> set_bits;
  set_bits.reserve(d + 1);
  internal::ForEachUserBlock(
      data.size(), seed, internal::kTagPtsCp, [&](std::size_t u, Rng& rng) {
        const LabeledPair& pr = data[u];
        const std::size_t label = GrrSample(pr.label, c, label_keep, rng);
        label_counts[label] += 1.0;
        const std::size_t hot = label == pr.label ? pr.item : d;
        set_bits.clear();
        PerturbOneHot(hot, d + 1, p_th, q_th, rng,
                      [&](std::size_t j) { set_bits.push_back(j); });
        if (!set_bits.empty() && set_bits.back() == d) return;  // flagged
        for (std::size_t j : set_bits) t.raw(label, j) += 1.0;
      });
  const double n_users = static_cast<double>(data.size());
  t.calibrated = Grid<double>(c, d);
  t.class_counts.assign(c, 0.0);
  for (std::size_t g = 0; g < c; ++g) {
    for (std::size_t i = 0; i < d; ++i) {
      t.calibrated(g, i) = CalibrateCp(t.raw(g, i), label_counts[g], n_users,
                                       label_probs, item_probs)
                               .value;
    }
    t.class_counts[g] = EstimateClassCount(label_counts[g], n_users, label_probs);
  }
  return t;
}

// Dispatches on `framework`; split pipelines spend split * epsilon on labels.
inline FrequencyTable RunFrequencyFramework(FrequencyFramework framework,
                                            const LabeledDataset& data,
                                            double epsilon, std::uint64_t seed,
                                            double split_fraction = 0.5) {
  switch (framework) {
    case FrequencyFramework::kHec:
      return RunHec(data, epsilon, seed);
    case FrequencyFramework::kPtj:
      return RunPtj(data, epsilon, seed);
    case FrequencyFramework::kPts: {
      if (!(split_fraction > 0.0 && split_fraction < 1.0)) {
        throw ParameterError("split_fraction must lie in (0, 1)");
      }
      const double eps1 = split_fraction * epsilon;
      return RunPts(data, eps1, epsilon - eps1, seed);
    }
    case FrequencyFramework::kPtsCp:
      return RunPtsCp(data, epsilon, seed, split_fraction);
  }
  throw ParameterError("unknown framework");
}

}  // namespace mcldp

#endif  // MCLDP_FRAMEWORKS_H_
