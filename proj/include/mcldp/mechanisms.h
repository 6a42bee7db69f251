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

#ifndef MCLDP_MECHANISMS_H_
#define MCLDP_MECHANISMS_H_

// Local perturbation primitives: generalized randomized response, unary
// encoding with optimized flipping probabilities, validity perturbation
// (unary encoding plus a trailing validity flag) and correlated perturbation
// of a (label, item) pair.
//
// Items and labels are 0-based. A validity-flagged vector has d + 1 bits;
// bit d is the flag.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>

#include "mcldp/bitvec.h"
#include "mcldp/errors.h"
#include "mcldp/rng.h"

namespace mcldp {

// Keep-truthful rate p, flip-to-other rate q and the budget they realize.
struct PerturbProbs {
  double p = 1.0;
  double q = 0.0;
  double epsilon = 0.0;

  Threshold32 p_threshold() const { return Threshold32(p); }
  Threshold32 q_threshold() const { return Threshold32(q); }
};

enum class MechanismKind { kGrr, kOue, kValidity, kCorrelated };

inline std::string ToString(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kGrr:
      return "grr";
    case MechanismKind::kOue:
      return "oue";
    case MechanismKind::kValidity:
      return "vp";
    case MechanismKind::kCorrelated:
      return "cp";
  }
  return "unknown";
}

inline MechanismKind ParseMechanismKind(const std::string& name) {
  if (name == "grr") return MechanismKind::kGrr;
  if (name == "oue") return MechanismKind::kOue;
  if (name == "vp") return MechanismKind::kValidity;
  if (name == "cp") return MechanismKind::kCorrelated;
  throw ParameterError("unknown mechanism '" + name + "'");
}

// Marker for an item that is not in the current valid set.
inline constexpr std::size_t kInvalidItem =
    std::numeric_limits<std::size_t>::max();

namespace internal {

inline void CheckEpsilon(double epsilon) {
  if (!(epsilon > 0.0) || std::isnan(epsilon)) {
    throw ParameterError("epsilon must be positive, got " +
                         std::to_string(epsilon));
  }
}

inline void CheckValue(std::size_t value, std::size_t domain_size,
                       const char* what) {
  if (value >= domain_size) {
    throw InputError(std::string(what) + " " + std::to_string(value) +
                     " outside domain of size " + std::to_string(domain_size));
  }
}

}  // namespace internal

inline PerturbProbs GrrProbs(std::size_t domain_size, double epsilon) {
  internal::CheckEpsilon(epsilon);
  if (domain_size < 2) {
    throw ParameterError("GRR needs a domain of at least 2 values");
  }
  // 1 / (e^eps + d - 1) written to stay finite for large epsilon.
  const double others = static_cast<double>(domain_size - 1);
  const double q = 1.0 / (std::exp(epsilon) + others);
  const double p = 1.0 / (1.0 + others * std::exp(-epsilon));
  return {p, q, epsilon};
}

inline PerturbProbs OueProbs(double epsilon) {
  internal::CheckEpsilon(epsilon);
  return {0.5, 1.0 / (std::exp(epsilon) + 1.0), epsilon};
}

// GRR when d < 3 e^eps + 2, OUE otherwise.
inline MechanismKind AdaptiveSelect(std::size_t domain_size, double epsilon) {
  internal::CheckEpsilon(epsilon);
  return static_cast<double>(domain_size) < 3.0 * std::exp(epsilon) + 2.0
             ? MechanismKind::kGrr
             : MechanismKind::kOue;
}

// ---------------------------------------------------------------------------
// Kernels shared by the report-producing functions below and the aggregation
// pipelines. They consume randomness in a fixed order so a kernel call and
// the matching report call give identical output for the same stream.

// GRR with precomputed probabilities.
inline std::size_t GrrSample(std::size_t value, std::size_t domain_size,
                             const Threshold32& keep, Rng& rng) {
  if (rng.Bernoulli(keep)) return value;
  std::size_t other = rng.UniformInt(domain_size - 1);
  return other >= value ? other + 1 : other;
}

// Perturbs a vector of `length` bits that is all zero except at `hot`
// (`hot >= length` means all zero). Each position draws 32 random bits in
// ascending order; `on_set(i)` is called for every output bit equal to 1.
template <typename Sink>
void PerturbOneHot(std::size_t hot, std::size_t length, const Threshold32& p1,
                   const Threshold32& q0, Rng& rng, Sink&& on_set) {
  const std::size_t split = hot < length ? hot : length;
  for (std::size_t i = 0; i < split; ++i) {
    if (q0.Accept(rng.Next32())) on_set(i);
  }
  if (split == length) return;
  if (p1.Accept(rng.Next32())) on_set(split);
  for (std::size_t i = split + 1; i < length; ++i) {
    if (q0.Accept(rng.Next32())) on_set(i);
  }
}

// ---------------------------------------------------------------------------
// Report-level API.

struct Report {
  enum class Kind { kCategorical, kBitVec, kBitVecWithFlag, kLabelAndBitVec };

  Kind kind = Kind::kCategorical;
  // Categorical value, or the perturbed label for kLabelAndBitVec.
  std::size_t index = 0;
  BitVector bits;

  // True when the trailing validity flag is present and set.
  bool flagged() const {
    return (kind == Kind::kBitVecWithFlag || kind == Kind::kLabelAndBitVec) &&
           bits.Get(bits.size() - 1);
  }
};

inline Report GrrPerturb(std::size_t value, std::size_t domain_size,
                         double epsilon, Rng& rng) {
  const PerturbProbs probs = GrrProbs(domain_size, epsilon);
  internal::CheckValue(value, domain_size, "value");
  Report r;
  r.kind = Report::Kind::kCategorical;
  r.index = GrrSample(value, domain_size, probs.p_threshold(), rng);
  return r;
}

inline BitVector UeEncode(std::size_t value, std::size_t domain_size) {
  if (domain_size < 2) throw InputError("unary encoding needs d >= 2");
  internal::CheckValue(value, domain_size, "value");
  BitVector bits(domain_size);
  bits.Set(value);
  return bits;
}

// Flips every bit independently: 1 -> 1 w.p. 1/2, 0 -> 1 w.p. 1/(e^eps + 1).
inline BitVector OuePerturb(const BitVector& bits, double epsilon, Rng& rng) {
  const PerturbProbs probs = OueProbs(epsilon);
  const Threshold32 p1 = probs.p_threshold();
  const Threshold32 q0 = probs.q_threshold();
  BitVector out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const Threshold32& t = bits.Get(i) ? p1 : q0;
    if (t.Accept(rng.Next32())) out.Set(i);
  }
  return out;
}

// One-hot at `value` with flag 0, or only the flag for kInvalidItem.
inline BitVector VpEncode(std::size_t value, std::size_t domain_size) {
  if (domain_size < 1) throw InputError("validity encoding needs d >= 1");
  BitVector bits(domain_size + 1);
  if (value == kInvalidItem) {
    bits.Set(domain_size);
  } else {
    internal::CheckValue(value, domain_size, "item");
    bits.Set(value);
  }
  return bits;
}

// Same per-bit law as OuePerturb, applied to all d + 1 positions.
inline BitVector VpPerturb(const BitVector& bits, double epsilon, Rng& rng) {
  if (bits.size() < 2) throw InputError("validity vector needs d + 1 >= 2 bits");
  return OuePerturb(bits, epsilon, rng);
}

// Perturbs the label with GRR(eps1); the item is encoded valid only when the
// perturbed label equals the true one and then perturbed with VP(eps2).
inline Report CpPerturb(std::size_t label, std::size_t item,
                        std::size_t class_count, std::size_t item_count,
                        double eps1, double eps2, Rng& rng) {
  const PerturbProbs label_probs = GrrProbs(class_count, eps1);
  const PerturbProbs item_probs = OueProbs(eps2);
  internal::CheckValue(label, class_count, "label");
  internal::CheckValue(item, item_count, "item");
  Report r;
  r.kind = Report::Kind::kLabelAndBitVec;
  r.index = GrrSample(label, class_count, label_probs.p_threshold(), rng);
  const std::size_t hot = r.index == label ? item : item_count;
  r.bits = BitVector(item_count + 1);
  PerturbOneHot(hot, item_count + 1, item_probs.p_threshold(),
                item_probs.q_threshold(), rng,
                [&](std::size_t i) { r.bits.Set(i); });
  return r;
}

}  // namespace mcldp

#endif  // MCLDP_MECHANISMS_H_
