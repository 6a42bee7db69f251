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

#ifndef MCLDP_HARNESS_H_
#define MCLDP_HARNESS_H_

// Monte-Carlo trial runner. Trial i always uses the stream
// DeriveSeed(master, {trial tag, i}); trials are computed in parallel batches
// and reduced strictly in index order, so every summary is independent of the
// thread count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "mcldp/dataset.h"
#include "mcldp/errors.h"
#include "mcldp/estimation.h"
#include "mcldp/frameworks.h"
#include "mcldp/mechanisms.h"
#include "mcldp/metrics.h"
#include "mcldp/rng.h"
#include "mcldp/topk.h"

namespace mcldp {

inline constexpr char kThreadsEnv[] = "MCLDP_THREADS";
inline constexpr std::uint64_t kTagTrial = 0x545249414c;

// MCLDP_THREADS when set to a positive integer, else the hardware count.
inline std::size_t DefaultThreadCount() {
  if (const char* env = std::getenv(kThreadsEnv)) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline std::uint64_t TrialSeed(std::uint64_t master, std::size_t trial) {
  return DeriveSeed(master, {kTagTrial, trial});
}

// Calls sink(i, make(i, TrialSeed(master, i))) for i = 0..trials-1 in index
// order. `make` runs on up to `threads` workers (0 picks the default).
template <typename Make, typename Sink>
void ForEachTrial(std::size_t trials, std::uint64_t master, std::size_t threads,
                  Make&& make, Sink&& sink) {
  using Result = decltype(make(std::size_t{0}, std::uint64_t{0}));
  if (threads == 0) threads = DefaultThreadCount();
  threads = std::max<std::size_t>(1, std::min(threads, trials));
  if (threads == 1) {
    for (std::size_t i = 0; i < trials; ++i) sink(i, make(i, TrialSeed(master, i)));
    return;
  }
  const std::size_t batch = threads * 4;
  std::vector<std::optional<Result>> slots(batch);
  for (std::size_t start = 0; start < trials; start += batch) {
    const std::size_t count = std::min(batch, trials - start);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto work = [&] {
      for (std::size_t j; (j = next.fetch_add(1)) < count;) {
        try {
          slots[j].emplace(make(start + j, TrialSeed(master, start + j)));
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    for (std::size_t j = 0; j < count; ++j) {
      sink(start + j, std::move(*slots[j]));
      slots[j].reset();
    }
  }
}

// Runs `make` for every trial and returns the results in index order.
template <typename Make>
auto RunTrials(std::size_t trials, std::uint64_t master, Make&& make,
               std::size_t threads = 0) {
  using Result = decltype(make(std::size_t{0}, std::uint64_t{0}));
  if (trials == 0) throw ParameterError("trial count must be >= 1");
  std::vector<Result> out;
  out.reserve(trials);
  ForEachTrial(trials, master, threads, make,
               [&](std::size_t, Result&& r) { out.push_back(std::move(r)); });
  return out;
}

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation, 0 for a single value
};

inline MeanSd Summarize(const std::vector<double>& v) {
  MeanSd s;
  if (v.empty()) return s;
  for (double x : v) s.mean += x;
  s.mean /= static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Frequency estimation.

struct FrequencyExperiment {
  FrequencyFramework framework = FrequencyFramework::kPtsCp;
  double epsilon = 1.0;
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  double split_fraction = 0.5;
  std::size_t threads = 0;
  bool keep_tables = false;
};

struct FrequencySummary {
  FrequencyExperiment experiment;
  Grid<double> truth;
  Grid<double> mean;       // mean estimate per cell
  Grid<double> mse;        // (1/t) sum (estimate - truth)^2 per cell
  Grid<double> spread;     // sample variance of the estimate per cell
  std::vector<double> class_counts_mean;
  std::vector<double> rmse;  // per trial
  MeanSd rmse_stats;
  std::vector<FrequencyTable> tables;  // per trial when keep_tables

  // Standard error of the mean estimate of one cell.
  double StandardError(std::size_t c, std::size_t i) const {
    return std::sqrt(spread(c, i) / static_cast<double>(rmse.size()));
  }
};

inline FrequencySummary RunFrequencyTrials(const LabeledDataset& data,
                                           const FrequencyExperiment& exp) {
  if (exp.trials == 0) throw ParameterError("trial count must be >= 1");
  FrequencySummary s;
  s.experiment = exp;
  s.truth = data.TrueCounts();
  const std::size_t rows = data.classes(), cols = data.items();
  Grid<double> sum(rows, cols), sum_sq(rows, cols), err_sq(rows, cols);
  s.class_counts_mean.assign(rows, 0.0);
  ForEachTrial(
      exp.trials, exp.seed, exp.threads,
      [&](std::size_t, std::uint64_t seed) {
        return RunFrequencyFramework(exp.framework, data, exp.epsilon, seed,
                                     exp.split_fraction);
      },
      [&](std::size_t, FrequencyTable&& t) {
        for (std::size_t j = 0; j < s.truth.size(); ++j) {
          const double v = t.calibrated.data()[j];
          const double e = v - s.truth.data()[j];
          sum.data()[j] += v;
          sum_sq.data()[j] += v * v;
          err_sq.data()[j] += e * e;
        }
        for (std::size_t c = 0; c < rows; ++c) {
          s.class_counts_mean[c] += t.class_counts[c];
        }
        s.rmse.push_back(Rmse(t.calibrated, s.truth));
        if (exp.keep_tables) s.tables.push_back(std::move(t));
      });
  const double t = static_cast<double>(exp.trials);
  s.mean = Grid<double>(rows, cols);
  s.mse = Grid<double>(rows, cols);
  s.spread = Grid<double>(rows, cols);
  for (std::size_t j = 0; j < s.truth.size(); ++j) {
    const double m = sum.data()[j] / t;
    s.mean.data()[j] = m;
    s.mse.data()[j] = err_sq.data()[j] / t;
    s.spread.data()[j] =
        exp.trials > 1
            ? std::max(0.0, (sum_sq.data()[j] - t * m * m) / (t - 1.0))
            : 0.0;
  }
  for (double& x : s.class_counts_mean) x /= t;
  s.rmse_stats = Summarize(s.rmse);
  return s;
}

// ---------------------------------------------------------------------------
// Top-k mining.

struct TopKExperiment {
  TopKFramework framework = TopKFramework::kPtsOptimized;
  // Overrides the PTS optimizations implied by `framework` (ablations).
  std::optional<PtsMiningOptions> pts_options;
  double epsilon = 4.0;
  MiningConfig config;
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  std::size_t threads = 0;
};

struct TopKSummary {
  TopKExperiment experiment;
  std::vector<double> f1;   // per trial, averaged over classes
  std::vector<double> ncr;  // per trial, averaged over classes
  MeanSd f1_stats;
  MeanSd ncr_stats;
  std::vector<double> f1_per_class;  // means over trials
  std::vector<double> ncr_per_class;
  std::vector<double> cp_feasible_rate;  // PTS with global candidates only
};

inline std::string VariantName(const TopKExperiment& exp) {
  if (!exp.pts_options) return ToString(exp.framework);
  const PtsMiningOptions& o = *exp.pts_options;
  if (o == PtsMiningOptions::Optimized()) return "pts-opt";
  if (o == PtsMiningOptions::Baseline()) return "pts-base";
  std::string name = "pts-base";
  if (o.shuffling) name += "+shuffling";
  if (o.validity) name += "+vp";
  if (o.correlated) name += "+cp";
  else if (o.global_candidates) name += "+global";
  return name;
}

inline TopKResult RunTopKVariant(const LabeledDataset& data,
                                 const TopKExperiment& exp,
                                 std::uint64_t seed) {
  if (exp.pts_options) {
    return RunPtsTopK(data, exp.epsilon, exp.config, seed, *exp.pts_options);
  }
  return RunMulticlassTopK(data, exp.epsilon, exp.framework, exp.config, seed);
}

inline TopKSummary RunTopKTrials(const LabeledDataset& data,
                                 const TopKExperiment& exp) {
  if (exp.trials == 0) throw ParameterError("trial count must be >= 1");
  exp.config.Validate(data.items());
  const ItemLists truth = TruthTopK(data.TrueCounts(), exp.config.k);
  const std::size_t c = data.classes();
  TopKSummary s;
  s.experiment = exp;
  s.f1_per_class.assign(c, 0.0);
  s.ncr_per_class.assign(c, 0.0);
  s.cp_feasible_rate.assign(c, 0.0);
  ForEachTrial(
      exp.trials, exp.seed, exp.threads,
      [&](std::size_t, std::uint64_t seed) {
        return RunTopKVariant(data, exp, seed);
      },
      [&](std::size_t, TopKResult&& r) {
        const ItemLists mined = ItemsOf(r.per_class);
        const std::vector<double> f1 = F1PerClass(mined, truth);
        const std::vector<double> ncr = NcrPerClass(mined, truth, exp.config.k);
        for (std::size_t k = 0; k < c; ++k) {
          s.f1_per_class[k] += f1[k];
          s.ncr_per_class[k] += ncr[k];
          if (r.noise.feasible_cp.size() == c && r.noise.feasible_cp[k]) {
            s.cp_feasible_rate[k] += 1.0;
          }
        }
        s.f1.push_back(internal::Mean(f1));
        s.ncr.push_back(internal::Mean(ncr));
      });
  const double t = static_cast<double>(exp.trials);
  for (std::size_t k = 0; k < c; ++k) {
    s.f1_per_class[k] /= t;
    s.ncr_per_class[k] /= t;
    s.cp_feasible_rate[k] /= t;
  }
  s.f1_stats = Summarize(s.f1);
  s.ncr_stats = Summarize(s.ncr);
  return s;
}

// ---------------------------------------------------------------------------
// Empirical against analytic variance.

struct VarianceRow {
  double epsilon = 0.0;
  std::size_t cls = 0;
  std::size_t item = 0;
  double f = 0.0;        // true pair frequency
  double n = 0.0;        // true class size
  double pmi = 0.0;
  double var_pts = 0.0;  // empirical, (1/t) sum (estimate - truth)^2
  double var_cp = 0.0;
  double analytic_cp = 0.0;  // published closed form
  double exact_cp = 0.0;     // with the pair/label covariance
  double gap_bound = 0.0;
  bool gap_holds = false;  // var_pts - var_cp >= gap_bound
};

// One row per (epsilon, target cell). PTS uses GRR labels and OUE items at
// the same split as PTS-CP.
inline std::vector<VarianceRow> CompareVarianceReport(
    const LabeledDataset& data,
    const std::vector<std::pair<std::size_t, std::size_t>>& targets,
    const std::vector<double>& epsilons, std::size_t trials,
    std::uint64_t seed, double split_fraction = 0.5, std::size_t threads = 0) {
  const Grid<double> truth = data.TrueCounts();
  const std::vector<double> sizes = data.ClassSizes();
  const double big_n = static_cast<double>(data.size());
  std::vector<VarianceRow> rows;
  for (std::size_t e = 0; e < epsilons.size(); ++e) {
    const double eps = epsilons[e];
    FrequencyExperiment exp;
    exp.epsilon = eps;
    exp.trials = trials;
    exp.split_fraction = split_fraction;
    exp.threads = threads;
    exp.framework = FrequencyFramework::kPts;
    exp.seed = DeriveSeed(seed, {e, 1});
    const FrequencySummary pts = RunFrequencyTrials(data, exp);
    exp.framework = FrequencyFramework::kPtsCp;
    exp.seed = DeriveSeed(seed, {e, 2});
    const FrequencySummary cp = RunFrequencyTrials(data, exp);
    const double eps1 = split_fraction * eps;
    const PerturbProbs probs1 = GrrProbs(data.classes(), eps1);
    const PerturbProbs probs2 = OueProbs(eps - eps1);
    for (const auto& [c, i] : targets) {
      VarianceRow row;
      row.epsilon = eps;
      row.cls = c;
      row.item = i;
      row.f = truth(c, i);
      row.n = sizes[c];
      const double fi = truth.ColSum(i);
      row.pmi = row.f > 0.0 ? Pmi(row.f, row.n, fi, big_n) : -INFINITY;
      row.var_pts = pts.mse(c, i);
      row.var_cp = cp.mse(c, i);
      row.analytic_cp = AnalyticVarCp(row.f, row.n, big_n, probs1, probs2);
      row.exact_cp = ExactVarCp(row.f, row.n, big_n, probs1, probs2);
      row.gap_bound =
          VarGapLowerBound(row.f, row.n, fi, big_n, probs1, probs2);
      row.gap_holds = row.var_pts - row.var_cp >= row.gap_bound;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace mcldp

#endif  // MCLDP_HARNESS_H_
