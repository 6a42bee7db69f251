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

#ifndef MCLDP_PRIVACY_AUDIT_H_
#define MCLDP_PRIVACY_AUDIT_H_

// Exhaustive worst-case privacy loss of the mechanisms in mechanisms.h.
// Output probabilities are computed in closed form from the per-value and
// per-bit laws and every (input, input', output) triple is covered.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "mcldp/errors.h"
#include "mcldp/mechanisms.h"

namespace mcldp {

struct AuditSpec {
  MechanismKind kind = MechanismKind::kGrr;
  double epsilon = 1.0;
  // Share of epsilon spent on the label by correlated perturbation.
  double label_share = 0.5;
  std::size_t classes = 1;
  std::size_t items = 2;
};

inline constexpr std::size_t kAuditMaxInputs = 64;
inline constexpr std::size_t kAuditMaxOutputs = std::size_t{1} << 20;

namespace internal {

// log Pr[output bits | one-hot input at `hot`] for every hot in [0, length),
// reduced to (max, min) across the hots in `hots`.
struct LogRange {
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  void Add(double x) {
    hi = std::max(hi, x);
    lo = std::min(lo, x);
  }
};

inline double OneHotLogProb(std::uint64_t mask, std::size_t length,
                            std::size_t hot, const PerturbProbs& probs) {
  double lp = 0.0;
  for (std::size_t i = 0; i < length; ++i) {
    const bool out = (mask >> i) & 1U;
    const double pr_one = i == hot ? probs.p : probs.q;
    lp += std::log(out ? pr_one : 1.0 - pr_one);
  }
  return lp;
}

}  // namespace internal

// max over inputs v, v' and outputs o of ln(Pr[o | v] / Pr[o | v']).
inline double PrivacyAudit(const AuditSpec& spec) {
  internal::CheckEpsilon(spec.epsilon);
  const std::size_t d = spec.items;
  double worst = 0.0;
  switch (spec.kind) {
    case MechanismKind::kGrr: {
      if (d > kAuditMaxInputs) throw CapacityError("GRR domain too large");
      const PerturbProbs probs = GrrProbs(d, spec.epsilon);
      for (std::size_t o = 0; o < d; ++o) {
        internal::LogRange r;
        for (std::size_t v = 0; v < d; ++v) {
          r.Add(std::log(v == o ? probs.p : probs.q));
        }
        worst = std::max(worst, r.hi - r.lo);
      }
      return worst;
    }
    case MechanismKind::kOue:
    case MechanismKind::kValidity: {
      const bool flagged = spec.kind == MechanismKind::kValidity;
      const std::size_t length = flagged ? d + 1 : d;
      if (d < (flagged ? 1U : 2U)) throw ParameterError("domain too small");
      if (length > 20 || d + (flagged ? 1 : 0) > kAuditMaxInputs) {
        throw CapacityError("output space exceeds 2^20");
      }
      const PerturbProbs probs = OueProbs(spec.epsilon);
      // Inputs: one-hot items, plus the flag-only encoding when flagged.
      const std::size_t inputs = length;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << length);
           ++mask) {
        internal::LogRange r;
        for (std::size_t hot = 0; hot < inputs; ++hot) {
          r.Add(internal::OneHotLogProb(mask, length, hot, probs));
        }
        worst = std::max(worst, r.hi - r.lo);
      }
      return worst;
    }
    case MechanismKind::kCorrelated: {
      const std::size_t c = spec.classes;
      if (!(spec.label_share > 0.0 && spec.label_share < 1.0)) {
        throw ParameterError("label_share must lie in (0, 1)");
      }
      if (c * d > kAuditMaxInputs) throw CapacityError("too many inputs");
      if (d + 1 > 20 || (c << (d + 1)) > kAuditMaxOutputs) {
        throw CapacityError("output space exceeds 2^20");
      }
      const PerturbProbs lp = GrrProbs(c, spec.label_share * spec.epsilon);
      const PerturbProbs ip = OueProbs((1.0 - spec.label_share) * spec.epsilon);
      const std::size_t length = d + 1;
      std::vector<double> bit_lp(length + 1);
      for (std::size_t out_label = 0; out_label < c; ++out_label) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << length);
             ++mask) {
          for (std::size_t hot = 0; hot < length; ++hot) {
            bit_lp[hot] = internal::OneHotLogProb(mask, length, hot, ip);
          }
          internal::LogRange r;
          for (std::size_t label = 0; label < c; ++label) {
            const double label_lp =
                std::log(label == out_label ? lp.p : lp.q);
            for (std::size_t item = 0; item < d; ++item) {
              const std::size_t hot = label == out_label ? item : d;
              r.Add(label_lp + bit_lp[hot]);
            }
          }
          worst = std::max(worst, r.hi - r.lo);
        }
      }
      return worst;
    }
  }
  throw ParameterError("unknown mechanism");
}

}  // namespace mcldp

#endif  // MCLDP_PRIVACY_AUDIT_H_
