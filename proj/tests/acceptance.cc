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


// Acceptance run: one PASS/FAIL line per criterion plus informational lines.
// Tolerances are pinned below; the exit status is nonzero when any criterion
// fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <utility>
#include <vector>

#include "mcldp/mcldp.h"
#include "scenarios.h"

namespace mcldp {
namespace {

constexpr double kAuditTolerance = 1e-9;
constexpr double kSeMultiple = 3.0;
constexpr double kVarianceTolerance = 0.10;
constexpr double kNoiseTolerance = 0.02;
constexpr double kTrendTolerance = 0.15;
constexpr double kShuffleRate = 90.0 / 105.0;
constexpr double kShuffleTolerance = 0.02;
constexpr double kTopKGain = 1.10;

int failures = 0;

class Criterion {
 public:
  Criterion(int id, double budget_s)
      : id_(id), budget_s_(budget_s), start_(std::chrono::steady_clock::now()) {}

  void Finish(bool ok, const std::string& detail) {
    const double s = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start_)
                         .count();
    const bool in_time = s < budget_s_;
    const bool pass = ok && in_time;
    failures += !pass;
    std::printf("criterion %d: %s %s [%.1fs of %.0fs]\n", id_,
                pass ? "PASS" : "FAIL", detail.c_str(), s, budget_s_);
    std::fflush(stdout);
  }

 private:
  int id_;
  double budget_s_;
  std::chrono::steady_clock::time_point start_;
};

std::string Fmt(const char* format, double a, double b = 0, double c = 0,
                double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

void Info(const std::string& line) {
  std::printf("info: %s\n", line.c_str());
  std::fflush(stdout);
}

// ---------------------------------------------------------------------------

void PrivacyAudits() {
  Criterion crit(1, 30);
  double worst = -1e300;
  bool ok = true;
  int audits = 0;
  for (MechanismKind kind : {MechanismKind::kGrr, MechanismKind::kOue,
                             MechanismKind::kValidity,
                             MechanismKind::kCorrelated}) {
    for (std::size_t c : {2, 3}) {
      for (std::size_t d : {2, 3, 4}) {
        for (double eps : {0.5, 1.0, 2.0}) {
          AuditSpec spec;
          spec.kind = kind;
          spec.epsilon = eps;
          spec.classes = c;
          spec.items = d;
          const double ratio = PrivacyAudit(spec);
          ok = ok && ratio <= eps + kAuditTolerance;
          worst = std::max(worst, ratio - eps);
          ++audits;
        }
      }
    }
  }
  crit.Finish(ok, Fmt("%.0f audits, max(log ratio - eps) = %.3g", audits,
                      worst));
}

void Unbiasedness() {
  Criterion crit(2, 300);
  const LabeledDataset data = testing::SmallInstance();
  bool ok = true;
  std::string detail;
  for (FrequencyFramework f : kAllFrequencyFrameworks) {
    double worst_z = 0.0;
    int misses = 0;
    for (double eps : {1.0, 2.0}) {
      FrequencyExperiment exp;
      exp.framework = f;
      exp.epsilon = eps;
      exp.trials = 1000;
      exp.seed = 1;
      const FrequencySummary s = RunFrequencyTrials(data, exp);
      for (std::size_t c = 0; c < s.truth.rows(); ++c) {
        for (std::size_t i = 0; i < s.truth.cols(); ++i) {
          const double err = std::abs(s.mean(c, i) - s.truth(c, i));
          const double se = s.StandardError(c, i);
          const double z = se > 0 ? err / se : (err > 0 ? 1e300 : 0.0);
          worst_z = std::max(worst_z, z);
          misses += z > kSeMultiple;
        }
      }
    }
    ok = ok && misses == 0;
    detail += ToString(f) + Fmt(" misses=%.0f/64 max_z=%.2f; ", misses, worst_z);
  }
  crit.Finish(ok, detail);
}

// SYN1-like at about N = 1e5 (every class 24998 users).
void VarianceFormula() {
  Criterion crit(3, 300);
  SynSpec spec = DefaultSynSpec(SynKind::kSyn1);
  spec.size_factor = 0.0225;
  const LabeledDataset data = GenVarianceDataset(spec);
  FrequencyExperiment exp;
  exp.framework = FrequencyFramework::kPtsCp;
  exp.epsilon = 1.0;
  exp.trials = 1000;
  exp.seed = 1;
  const FrequencySummary s = RunFrequencyTrials(data, exp);
  const PerturbProbs b1 = GrrProbs(4, 0.5), b2 = OueProbs(0.5);
  const std::vector<double> sizes = data.ClassSizes();
  const double big_n = static_cast<double>(data.size());
  bool ok = true;
  std::string detail = "empirical/analytic:", exact = "empirical/exact:";
  for (std::size_t c = 0; c < 4; ++c) {
    const double f = s.truth(c, 0);
    const double analytic = AnalyticVarCp(f, sizes[c], big_n, b1, b2);
    const double ratio = s.mse(c, 0) / analytic;
    ok = ok && std::abs(ratio - 1.0) <= kVarianceTolerance;
    detail += Fmt(" %.3f", ratio);
    exact += Fmt(" %.3f", s.mse(c, 0) / ExactVarCp(f, sizes[c], big_n, b1, b2));
  }
  crit.Finish(ok, detail);
  Info("criterion 3 with the pair/label covariance, " + exact);
}

void InvalidNoise() {
  Criterion crit(4, 60);
  const std::size_t d = 8, m = 10000;
  const int trials = 500;
  const double eps = 1.0;
  const PerturbProbs b = OueProbs(eps);
  Rng rng(DeriveSeed(1, {4}));
  double sum_plain = 0, sum_vp = 0;
  double sum0_plain = 0, sq0_plain = 0, sum0_vp = 0, sq0_vp = 0;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> plain(d, 0.0), vp(d, 0.0);
    for (std::size_t u = 0; u < m; ++u) {
      const BitVector x =
          OuePerturb(UeEncode(rng.UniformInt(d), d), eps, rng);
      const BitVector y = VpPerturb(VpEncode(kInvalidItem, d), eps, rng);
      const bool flagged = y.Get(d);
      for (std::size_t i = 0; i < d; ++i) {
        plain[i] += x.Get(i);
        vp[i] += !flagged && y.Get(i);
      }
    }
    for (std::size_t i = 0; i < d; ++i) {
      sum_plain += plain[i];
      sum_vp += vp[i];
    }
    sum0_plain += plain[0];
    sq0_plain += plain[0] * plain[0];
    sum0_vp += vp[0];
    sq0_vp += vp[0] * vp[0];
  }
  const double cells = static_cast<double>(trials * d);
  const double mean_plain = sum_plain / cells, mean_vp = sum_vp / cells;
  const double var_plain = sq0_plain / trials - std::pow(sum0_plain / trials, 2);
  const double var_vp = sq0_vp / trials - std::pow(sum0_vp / trials, 2);
  const NoisePrediction np = NoiseInvalidLdp(m, d, b);
  const NoisePrediction nv = NoiseInvalidVp(m, b);
  const double rel_plain = mean_plain / np.mean - 1.0;
  const double rel_vp = mean_vp / nv.mean - 1.0;
  const bool ok = std::abs(rel_plain) <= kNoiseTolerance &&
                  std::abs(rel_vp) <= kNoiseTolerance && mean_vp < mean_plain &&
                  var_vp < var_plain && nv.mean < np.mean &&
                  nv.variance < np.variance;
  crit.Finish(ok, Fmt("plain mean %.1f (pred %.1f), vp mean %.1f (pred %.1f)",
                      mean_plain, np.mean, mean_vp, nv.mean) +
                      Fmt(", var plain %.0f (pred %.0f) vp %.0f (pred %.0f)",
                          var_plain, np.variance, var_vp, nv.variance));
}

void VarianceOrdering() {
  Criterion crit(5, 300);
  const LabeledDataset data = testing::SmallInstance();
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t c = 0; c < 4; ++c) {
    for (std::size_t i = 0; i < 8; ++i) cells.emplace_back(c, i);
  }
  const auto rows = CompareVarianceReport(data, cells, {1.0, 2.0}, 1000, 1);
  int violated = 0, negative = 0;
  double worst = 1e300;
  for (const VarianceRow& r : rows) {
    violated += !r.gap_holds;
    negative += r.gap_bound < 0.0;
    worst = std::min(worst, (r.var_pts - r.var_cp) / r.gap_bound);
  }
  crit.Finish(violated == 0 && negative == 0,
              Fmt("%.0f of %.0f rows below the bound, %.0f negative bounds, "
                  "min gap/bound = %.3f",
                  violated, static_cast<double>(rows.size()), negative, worst));
  for (double eps : {1.0, 2.0}) {
    int bad = 0;
    for (const VarianceRow& r : rows) bad += r.epsilon == eps && !r.gap_holds;
    Info(Fmt("criterion 5 at eps=%.0f: %.0f of 32 rows below the bound", eps,
             bad));
  }
}

std::vector<double> TargetVariances(SynKind kind, std::size_t trials) {
  SynSpec spec = DefaultSynSpec(kind);
  spec.size_factor = 0.001;
  const LabeledDataset data = GenVarianceDataset(spec);
  FrequencyExperiment exp;
  exp.framework = FrequencyFramework::kPtsCp;
  exp.epsilon = 1.0;
  exp.trials = trials;
  exp.seed = 1;
  const FrequencySummary s = RunFrequencyTrials(data, exp);
  std::vector<double> out;
  for (std::size_t c = 0; c < 4; ++c) out.push_back(s.mse(c, 0));
  return out;
}

// Both sweeps at size factor 0.001 (N = 4444) with enough trials that the
// Monte-Carlo error stays well below the effects being compared.
void VarianceTrends() {
  Criterion crit(6, 600);
  const std::size_t trials = 100000;
  const std::vector<double> syn1 = TargetVariances(SynKind::kSyn1, trials);
  const std::vector<double> syn2 = TargetVariances(SynKind::kSyn2, trials);
  const auto [lo, hi] = std::minmax_element(syn1.begin(), syn1.end());
  const double variation = *hi / *lo - 1.0;
  bool increasing = true;
  for (std::size_t c = 1; c < 4; ++c) increasing &= syn2[c] > syn2[c - 1];
  crit.Finish(variation < kTrendTolerance && increasing,
              Fmt("SYN1 max/min - 1 = %.3f;", variation) +
                  Fmt(" SYN2 variances %.0f %.0f %.0f %.0f", syn2[0], syn2[1],
                      syn2[2], syn2[3]));
}

void RmseOrdering() {
  Criterion crit(7, 300);
  const LabeledDataset data = testing::SmallInstance();
  double rmse[4], sd[4];
  for (FrequencyFramework f : kAllFrequencyFrameworks) {
    FrequencyExperiment exp;
    exp.framework = f;
    exp.epsilon = 0.5;
    exp.trials = 20;
    exp.seed = 1;
    const FrequencySummary s = RunFrequencyTrials(data, exp);
    rmse[static_cast<int>(f)] = s.rmse_stats.mean;
    sd[static_cast<int>(f)] = s.rmse_stats.sd;
  }
  enum { kHec, kPtj, kPts, kPtsCp };
  const bool ok = rmse[kPtsCp] < rmse[kPts] && rmse[kPts] < rmse[kHec] &&
                  rmse[kPtj] < rmse[kPts];
  crit.Finish(ok, Fmt("RMSE hec %.1f ptj %.1f pts %.1f pts-cp %.1f",
                      rmse[kHec], rmse[kPtj], rmse[kPts], rmse[kPtsCp]));
  Info(Fmt("criterion 7 RMSE sd across trials: ptj %.1f pts %.1f pts-cp %.1f",
           sd[kPtj], sd[kPts], sd[kPtsCp]));
}

void ShuffleProbability() {
  Criterion crit(8, 60);
  const std::vector<std::uint64_t> counts = PrefixPathologyCounts();
  const Rational exact = ShuffleSuccessProbability(counts, 0, 2, 2);
  const bool exact_ok = exact.num * 105 == exact.den * 90;
  std::vector<double> real(counts.begin(), counts.end());
  const auto prefix = PrefixExpansionTopK(real, 1);
  const bool prefix_misses = prefix.empty() || prefix[0].item != 0;
  const std::uint64_t runs = 100000;
  int hits = 0;
  for (std::uint64_t r = 0; r < runs; ++r) {
    const auto top = NoiselessShuffledTopK(real, 1, DeriveSeed(8, {r}));
    hits += !top.empty() && top[0].item == 0;
  }
  const double rate = static_cast<double>(hits) / runs;
  crit.Finish(exact_ok && prefix_misses &&
                  std::abs(rate - kShuffleRate) <= kShuffleTolerance,
              Fmt("exact %.0f/%.0f, prefix expansion misses=%.0f, shuffled "
                  "rate %.4f",
                  static_cast<double>(exact.num), static_cast<double>(exact.den),
                  prefix_misses, rate));
}

TopKSummary MineSyn(const LabeledDataset& data, TopKFramework f,
                    std::optional<PtsMiningOptions> options) {
  TopKExperiment exp;
  exp.framework = f;
  exp.pts_options = options;
  exp.epsilon = 4.0;
  exp.config.k = 10;
  exp.trials = 20;
  exp.seed = 1;
  return RunTopKTrials(data, exp);
}

void TopKImprovement() {
  Criterion crit(9, 900);
  const LabeledDataset data = GenerateDataset(testing::DeskSyn3());
  const double opt =
      MineSyn(data, TopKFramework::kPtsOptimized, std::nullopt).f1_stats.mean;
  const double base =
      MineSyn(data, TopKFramework::kPtsBaseline, std::nullopt).f1_stats.mean;
  PtsMiningOptions shuffling = PtsMiningOptions::Baseline();
  shuffling.shuffling = true;
  PtsMiningOptions vp = PtsMiningOptions::Baseline();
  vp.validity = true;
  PtsMiningOptions cp = PtsMiningOptions::Baseline();
  cp.correlated = true;
  cp.global_candidates = true;
  const double f_shuffling =
      MineSyn(data, TopKFramework::kPtsBaseline, shuffling).f1_stats.mean;
  const double f_vp = MineSyn(data, TopKFramework::kPtsBaseline, vp).f1_stats.mean;
  const double f_cp = MineSyn(data, TopKFramework::kPtsBaseline, cp).f1_stats.mean;
  const bool ok = opt >= kTopKGain * base && f_shuffling > base &&
                  f_vp > base && f_cp > base;
  crit.Finish(ok, Fmt("F1 opt %.3f base %.3f (gain %.1f%%)", opt, base,
                      100.0 * (opt / base - 1.0)) +
                      Fmt("; +shuffling %.3f +vp %.3f +cp+global %.3f",
                          f_shuffling, f_vp, f_cp));
}

void Syn4Degradation() {
  SynSpec spec = testing::DeskSyn3();
  spec.global_overlap = false;
  const LabeledDataset data = GenerateDataset(spec);
  const double opt =
      MineSyn(data, TopKFramework::kPtsOptimized, std::nullopt).f1_stats.mean;
  const double base =
      MineSyn(data, TopKFramework::kPtsBaseline, std::nullopt).f1_stats.mean;
  Info(Fmt("SYN4-like (no shared items) F1 opt %.3f base %.3f", opt, base));
}

void MetricExamples() {
  Criterion crit(10, 1);
  bool ok = true;
  Grid<double> a(2, 2, 5.0), b(2, 2, 5.0);
  ok &= Rmse(a, b) == 0.0;
  Grid<double> one(1, 1, 3.0), zero(1, 1, 0.0);
  ok &= Rmse(one, zero) == 3.0;
  Grid<double> r(2, 2);
  r(0, 0) = 1;
  r(0, 1) = -1;
  r(1, 0) = 1;
  r(1, 1) = -1;
  ok &= Rmse(r, Grid<double>(2, 2)) == 1.0;
  const ItemLists truth = {{1, 2, 3, 4}, {5, 6, 7, 8}};
  ok &= F1TopK(truth, truth) == 1.0;
  ok &= F1TopK({{9, 10, 11, 12}, {13, 14, 15, 16}}, truth) == 0.0;
  ok &= F1TopK({{1, 2, 20, 21}, {5, 6, 7, 8}}, truth) == 0.75;
  ok &= Ncr({{1, 2, 3}}, {{1, 2, 3}}, 3) == 1.0;
  ok &= Ncr({{7}}, {{7, 8}}, 2) == 2.0 / 3.0;
  ok &= Ncr({{1, 2}}, {{7, 8}}, 2) == 0.0;
  crit.Finish(ok, "RMSE, F1 and NCR example tables");
}

// ---------------------------------------------------------------------------

std::string Slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool Cli(const std::string& args, const std::filesystem::path& out) {
  const std::string cmd = std::string(MCLDP_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) && WEXITSTATUS(status) == 0;
}

void Determinism() {
  Criterion crit(11, 60);
  const auto dir = std::filesystem::temp_directory_path() / "mcldp_acceptance";
  std::filesystem::create_directories(dir);
  bool ok = true;
  const auto data_a = dir / "a.csv", data_b = dir / "b.csv";
  const std::string gen =
      "gen --kind syn34 --classes 5 --items 256 --n 20000 --seed 11 --out ";
  ok &= Cli(gen + data_a.string(), dir / "gen.log");
  ok &= Cli(gen + data_b.string(), dir / "gen.log");
  ok &= Slurp(data_a) == Slurp(data_b);
  const std::string runs[] = {
      "freq --framework all --eps 0.5,2 --trials 8 --seed 5 --data ",
      "topk --framework all --k 5 --eps 4 --trials 4 --seed 5 --data ",
  };
  int n = 0;
  for (const std::string& run : runs) {
    std::string first;
    for (const char* threads : {" --threads 1", " --threads 1", " --threads 4",
                                " --serial"}) {
      const auto out = dir / ("run" + std::to_string(n++) + ".csv");
      ok &= Cli(run + data_a.string() + threads, out);
      const std::string text = Slurp(out);
      if (first.empty()) first = text;
      ok &= !text.empty() && text == first;
    }
  }
  // Library level: trial results do not depend on the worker count.
  const LabeledDataset data = testing::SmallInstance();
  FrequencyExperiment exp;
  exp.trials = 8;
  exp.threads = 1;
  const FrequencySummary one = RunFrequencyTrials(data, exp);
  exp.threads = 4;
  const FrequencySummary four = RunFrequencyTrials(data, exp);
  ok &= one.rmse == four.rmse && one.mean == four.mean;
  std::filesystem::remove_all(dir);
  crit.Finish(ok, "repeated CLI runs and thread counts give identical bytes");
}

}  // namespace
}  // namespace mcldp

int main() {
  using namespace mcldp;
  PrivacyAudits();
  Unbiasedness();
  VarianceFormula();
  InvalidNoise();
  VarianceOrdering();
  VarianceTrends();
  RmseOrdering();
  ShuffleProbability();
  TopKImprovement();
  Syn4Degradation();
  MetricExamples();
  Determinism();
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
