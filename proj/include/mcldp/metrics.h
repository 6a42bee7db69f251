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

#ifndef MCLDP_METRICS_H_
#define MCLDP_METRICS_H_

// Accuracy metrics: RMSE over the c x d grid, and F1 / NCR of mined top-k
// lists averaged across classes (a class with nothing mined scores 0).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "mcldp/dataset.h"
#include "mcldp/errors.h"
#include "mcldp/topk.h"

namespace mcldp {

// sqrt(mean over all cells of (estimate - truth)^2), zero-truth cells
// included.
inline double Rmse(const Grid<double>& estimate, const Grid<double>& truth) {
  if (!estimate.SameShape(truth)) throw InputError("RMSE shape mismatch");
  if (truth.size() == 0) throw InputError("RMSE of an empty table");
  double sum = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double e = estimate.data()[i] - truth.data()[i];
    sum += e * e;
  }
  return std::sqrt(sum / static_cast<double>(truth.size()));
}

using ItemLists = std::vector<std::vector<std::uint32_t>>;

// True top-k of each class by count; ties go to the lower item index.
inline ItemLists TruthTopK(const Grid<double>& counts, std::size_t k) {
  if (k == 0 || k > counts.cols()) throw ParameterError("k must lie in [1, d]");
  ItemLists out(counts.rows());
  for (std::size_t c = 0; c < counts.rows(); ++c) {
    std::vector<std::uint32_t> order(counts.cols());
    std::iota(order.begin(), order.end(), std::uint32_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) {
                       return counts(c, a) > counts(c, b);
                     });
    order.resize(k);
    out[c] = std::move(order);
  }
  return out;
}

inline ItemLists ItemsOf(const std::vector<std::vector<RankedItem>>& mined) {
  ItemLists out(mined.size());
  for (std::size_t c = 0; c < mined.size(); ++c) {
    for (const RankedItem& r : mined[c]) out[c].push_back(r.item);
  }
  return out;
}

namespace internal {

inline void CheckLists(const ItemLists& mined, const ItemLists& truth) {
  if (mined.size() != truth.size()) {
    throw InputError("mined and true lists cover different class counts");
  }
  if (truth.empty()) throw InputError("no classes to score");
}

inline double Mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) /
         static_cast<double>(v.size());
}

}  // namespace internal

// Per class |mined ∩ truth| / k with k = |truth| (precision equals recall).
inline std::vector<double> F1PerClass(const ItemLists& mined,
                                      const ItemLists& truth) {
  internal::CheckLists(mined, truth);
  std::vector<double> out;
  for (std::size_t c = 0; c < truth.size(); ++c) {
    if (truth[c].empty()) throw InputError("empty truth list");
    std::size_t hits = 0;
    for (std::uint32_t v : mined[c]) {
      hits += std::count(truth[c].begin(), truth[c].end(), v) > 0;
    }
    out.push_back(static_cast<double>(hits) /
                  static_cast<double>(truth[c].size()));
  }
  return out;
}

inline double F1TopK(const ItemLists& mined, const ItemLists& truth) {
  return internal::Mean(F1PerClass(mined, truth));
}

// Per class 2 sum q(i) / (k (k + 1)), where the true rank-r item weighs
// k - r + 1 and other items weigh 0.
inline std::vector<double> NcrPerClass(const ItemLists& mined,
                                       const ItemLists& truth, std::size_t k) {
  internal::CheckLists(mined, truth);
  if (k == 0) throw ParameterError("k must be >= 1");
  std::vector<double> out;
  for (std::size_t c = 0; c < truth.size(); ++c) {
    double score = 0.0;
    for (std::uint32_t v : mined[c]) {
      const auto it = std::find(truth[c].begin(), truth[c].end(), v);
      if (it == truth[c].end()) continue;
      const auto rank = static_cast<std::size_t>(it - truth[c].begin());
      if (rank < k) score += static_cast<double>(k - rank);
    }
    out.push_back(2.0 * score / static_cast<double>(k * (k + 1)));
  }
  return out;
}

inline double Ncr(const ItemLists& mined, const ItemLists& truth,
                  std::size_t k) {
  return internal::Mean(NcrPerClass(mined, truth, k));
}

}  // namespace mcldp

#endif  // MCLDP_METRICS_H_
