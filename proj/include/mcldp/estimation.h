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

#ifndef MCLDP_ESTIMATION_H_
#define MCLDP_ESTIMATION_H_

// Unbiased calibrators for the frequency pipelines and closed-form
// predictors (variances, injected noise, expected counts) used as oracles by
// the test harness.
//
// Notation: probs1 governs the label channel (GRR), probs2 the item channel
// (OUE or validity perturbation). N is the number of reporting users.

#include <cmath>
#include <optional>
#include <string>

#include "mcldp/errors.h"
#include "mcldp/mechanisms.h"

namespace mcldp {

// Fixed tolerances shared by the test and acceptance suites.
namespace tolerance {
inline constexpr double kAuditSlack = 1e-9;
inline constexpr double kStandardErrors = 3.0;
inline constexpr double kVarianceMatch = 0.10;
inline constexpr double kNoiseMeanMatch = 0.02;
inline constexpr double kTrendVariation = 0.15;
inline constexpr double kProbabilityIdentity = 1e-12;
}  // namespace tolerance

struct FrequencyEstimate {
  double value = 0.0;  // may be negative
  std::optional<double> variance;
};

struct NoisePrediction {
  double mean = 0.0;
  double variance = 0.0;
};

namespace internal {

inline void CheckProbs(const PerturbProbs& probs, const char* which) {
  if (!(probs.p >= 0.0 && probs.p <= 1.0 && probs.q >= 0.0 &&
        probs.q <= 1.0)) {
    throw ParameterError(std::string(which) + ": probabilities outside [0,1]");
  }
  if (!(probs.p > probs.q)) {
    throw ParameterError(std::string(which) +
                         ": degenerate perturbation (p must exceed q)");
  }
}

}  // namespace internal

// (count - N q) / (p - q).
inline FrequencyEstimate CalibrateStandard(double count, double total_users,
                                           const PerturbProbs& probs) {
  internal::CheckProbs(probs, "CalibrateStandard");
  return {(count - total_users * probs.q) / (probs.p - probs.q), std::nullopt};
}

// Per-class estimate when users are split into `class_count` groups:
// (c count - N q) / (p - q).
inline FrequencyEstimate CalibrateHec(double count, double total_users,
                                      double class_count,
                                      const PerturbProbs& probs) {
  internal::CheckProbs(probs, "CalibrateHec");
  if (!(class_count >= 1.0)) throw ParameterError("class_count must be >= 1");
  return {(class_count * count - total_users * probs.q) / (probs.p - probs.q),
          std::nullopt};
}

// n_hat = (n_tilde - N q1) / (p1 - q1).
inline double EstimateClassCount(double label_count, double total_users,
                                 const PerturbProbs& probs1) {
  internal::CheckProbs(probs1, "EstimateClassCount");
  return (label_count - total_users * probs1.q) / (probs1.p - probs1.q);
}

// Correlated perturbation. `pair_count` counts reports carrying label C with
// item bit I set and the validity flag clear; `label_count` counts reports
// carrying label C.
inline FrequencyEstimate CalibrateCp(double pair_count, double label_count,
                                     double total_users,
                                     const PerturbProbs& probs1,
                                     const PerturbProbs& probs2) {
  internal::CheckProbs(probs1, "CalibrateCp(label)");
  internal::CheckProbs(probs2, "CalibrateCp(item)");
  const double p1 = probs1.p, q1 = probs1.q, p2 = probs2.p, q2 = probs2.q;
  const double n_hat = EstimateClassCount(label_count, total_users, probs1);
  const double denom = p1 * (1.0 - q2) * (p2 - q2);
  const double value =
      (pair_count - total_users * q1 * q2 * (1.0 - p2)) / denom -
      n_hat * q2 * (p1 * (1.0 - q2) - q1 * (1.0 - p2)) / denom;
  return {value, std::nullopt};
}

// Separate label/item perturbation. `pair_count` counts reports with label C
// and item bit I set, `item_count_sum` counts reports with item bit I set
// over all labels.
inline FrequencyEstimate CalibratePts(double pair_count, double label_count,
                                      double item_count_sum,
                                      double total_users,
                                      const PerturbProbs& probs1,
                                      const PerturbProbs& probs2) {
  internal::CheckProbs(probs1, "CalibratePts(label)");
  internal::CheckProbs(probs2, "CalibratePts(item)");
  const double p1 = probs1.p, q1 = probs1.q, p2 = probs2.p, q2 = probs2.q;
  const double n_hat = EstimateClassCount(label_count, total_users, probs1);
  const double item_hat = (item_count_sum - total_users * q2) / (p2 - q2);
  const double denom = (p1 - q1) * (p2 - q2);
  const double value = (pair_count - n_hat * q2 * (p1 - q1)) / denom -
                       (item_hat * q1 * (p2 - q2) + total_users * q1 * q2) /
                           denom;
  return {value, std::nullopt};
}

// Validity perturbation over a valid set. `count` counts reports with bit I
// set and the flag clear; `flag_count` counts reports with the flag set. The
// invalid population m is estimated from the flag column and removed:
// E[count] = f (p - q)(1 - q) + N q (1 - q) - m q (p - q).
inline FrequencyEstimate CalibrateVp(double count, double flag_count,
                                     double total_users,
                                     const PerturbProbs& probs) {
  internal::CheckProbs(probs, "CalibrateVp");
  const double p = probs.p, q = probs.q;
  if (!(q < 1.0)) throw ParameterError("CalibrateVp: q must be below 1");
  const double m_hat = (flag_count - total_users * q) / (p - q);
  return {(count - total_users * q * (1.0 - q) + m_hat * q * (p - q)) /
              ((p - q) * (1.0 - q)),
          std::nullopt};
}

// Closed-form variance of CalibrateCp as published: the pair count and the
// class-size estimate are treated as independent (four additive terms).
inline double AnalyticVarCp(double true_f, double true_n, double total_users,
                            const PerturbProbs& probs1,
                            const PerturbProbs& probs2) {
  internal::CheckProbs(probs1, "AnalyticVarCp(label)");
  internal::CheckProbs(probs2, "AnalyticVarCp(item)");
  const double p1 = probs1.p, q1 = probs1.q, p2 = probs2.p, q2 = probs2.q;
  const double f = true_f, n = true_n, big_n = total_users;
  const double denom = p1 * (1.0 - q2) * (p2 - q2);
  const double d2 = denom * denom;
  const double r_target = p1 * (1.0 - q2) * p2;
  const double r_other = p1 * (1.0 - q2) * q2;
  const double r_foreign = q1 * (1.0 - p2) * q2;
  const double lift = q2 * (p1 * (1.0 - q2) - q1 * (1.0 - p2)) / denom;
  return f * r_target * (1.0 - r_target) / d2 +
         (n - f) * r_other * (1.0 - r_other) / d2 +
         (big_n - n) * r_foreign * (1.0 - r_foreign) / d2 +
         lift * lift *
             (n * (p1 * (1.0 - p1) - q1 * (1.0 - q1)) +
              big_n * q1 * (1.0 - q1)) /
             ((p1 - q1) * (p1 - q1));
}

// Exact variance of CalibrateCp: AnalyticVarCp minus the covariance between
// the pair count and the label count. Both are tallied over the same
// reports, so the covariance is positive and the published form
// overestimates.
inline double ExactVarCp(double true_f, double true_n, double total_users,
                         const PerturbProbs& probs1,
                         const PerturbProbs& probs2) {
  const double independent =
      AnalyticVarCp(true_f, true_n, total_users, probs1, probs2);
  const double p1 = probs1.p, q1 = probs1.q, p2 = probs2.p, q2 = probs2.q;
  const double f = true_f, n = true_n, big_n = total_users;
  const double denom = p1 * (1.0 - q2) * (p2 - q2);
  const double lift = q2 * (p1 * (1.0 - q2) - q1 * (1.0 - p2));
  // Cov(pair_count, label_count): a pair hit implies a label hit.
  const double cov_counts =
      f * p1 * (1.0 - q2) * p2 * (1.0 - p1) +
      (n - f) * p1 * (1.0 - q2) * q2 * (1.0 - p1) +
      (big_n - n) * q1 * (1.0 - p2) * q2 * (1.0 - q1);
  const double cov_n_hat = cov_counts / (p1 - q1);
  return independent - 2.0 * lift * cov_n_hat / (denom * denom);
}

// Lower bound on Var[PTS with GRR + OUE] - Var[correlated perturbation] as
// published.
inline double VarGapLowerBound(double true_f, double true_n,
                               double item_freq_sum, double total_users,
                               const PerturbProbs& probs1,
                               const PerturbProbs& probs2) {
  internal::CheckProbs(probs1, "VarGapLowerBound(label)");
  internal::CheckProbs(probs2, "VarGapLowerBound(item)");
  const double p1 = probs1.p, q1 = probs1.q, p2 = probs2.p, q2 = probs2.q;
  const double f = true_f, n = true_n, big_n = total_users;
  const double fi = item_freq_sum;
  const double denom = p1 * (1.0 - q2) * (p2 - q2);
  const double d2 = denom * denom;
  const double one_minus_q1q2 = 1.0 - q1 * q2;
  const double term1 =
      ((n - f) * p1 * p1 * q2 * q2 * (1.0 - q2) * (1.0 - q2) +
       (big_n - n) * q1 * q2 * p2 * one_minus_q1q2 * one_minus_q1q2) /
      d2;
  const double lift = q1 * q2 * (1.0 - p2) / denom;
  const double term2 = lift * lift *
                       (n * p1 * (1.0 - p1) + (big_n - n) * q1 * (1.0 - q1)) /
                       ((p1 - q1) * (p1 - q1));
  const double scale = q1 / ((p1 - q1) * (p2 - q2));
  const double term3 = scale * scale *
                       (fi * p2 * (1.0 - p2) + (big_n - fi) * q2 * (1.0 - q2));
  return term1 + term2 + term3;
}

// Noise that m invalid users add to one valid item's count when each of them
// substitutes a uniformly random valid item before perturbing.
inline NoisePrediction NoiseInvalidLdp(double m, double d,
                                       const PerturbProbs& probs) {
  const double p = probs.p, q = probs.q;
  return {m * q + m / d * (p - q),
          m * q * (1.0 - q) + m / d * (p - q) * (1.0 - p - q)};
}

// Same under validity perturbation, where a valid item is counted only with
// its flag clear.
inline NoisePrediction NoiseInvalidVp(double m, const PerturbProbs& probs) {
  const double p = probs.p, q = probs.q;
  return {m * q * (1.0 - p),
          m * q * (1.0 - q) - m * p * q * (1.0 + p * q - 2.0 * q)};
}

enum class CountModel { kPlainLdp, kValidity };

// Count of a target item when n1 users hold it, n2 users hold other valid
// items and m users hold invalid items.
inline NoisePrediction ExpectedCounts(double n1, double n2, double m, double d,
                                      const PerturbProbs& probs,
                                      CountModel model) {
  const double p = probs.p, q = probs.q;
  if (model == CountModel::kPlainLdp) {
    return {n1 * p + n2 * q + m * q + m / d * (p - q),
            n1 * (p - p * p) + n2 * (q - q * q) + m * (q - q * q) +
                m / d * (p - q) * (1.0 - p - q)};
  }
  return {(1.0 - q) * (n1 * p + n2 * q + m * q - m * q * (p - q) / (1.0 - q)),
          n1 * (p - p * p + 2.0 * p * p * q - p * q - p * p * q * q) +
              n2 * (q - 2.0 * q * q + 2.0 * q * q * q - q * q * q * q) +
              m * (q - q * q + 2.0 * p * q * q - p * q - p * p * q * q)};
}

// log2 of p(C, I) / (p(C) p(I)).
inline double Pmi(double f_ci, double f_c, double f_i, double total) {
  if (!(f_ci > 0.0 && f_c > 0.0 && f_i > 0.0 && total > 0.0)) {
    throw InputError("PMI needs positive counts");
  }
  return std::log2((f_ci / total) / ((f_c / total) * (f_i / total)));
}

// Coefficients of f, n and N in AnalyticVarCp, which is linear in the three
// counts. Obtained by finite differencing.
struct VarianceCoefficients {
  double pair = 0.0;
  double class_size = 0.0;
  double total = 0.0;
};

inline VarianceCoefficients AnalyticVarCpCoefficients(
    const PerturbProbs& probs1, const PerturbProbs& probs2) {
  const double base = AnalyticVarCp(0.0, 0.0, 0.0, probs1, probs2);
  return {AnalyticVarCp(1.0, 1.0, 1.0, probs1, probs2) -
              AnalyticVarCp(0.0, 1.0, 1.0, probs1, probs2),
          AnalyticVarCp(0.0, 1.0, 1.0, probs1, probs2) -
              AnalyticVarCp(0.0, 0.0, 1.0, probs1, probs2),
          AnalyticVarCp(0.0, 0.0, 1.0, probs1, probs2) - base};
}

}  // namespace mcldp

#endif  // MCLDP_ESTIMATION_H_
