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

#ifndef MCLDP_DATAGEN_H_
#define MCLDP_DATAGEN_H_

// Synthetic label-item populations and CSV ingestion.
//
// SYN1-like and SYN2-like datasets place exact counts (for variance
// studies). SYN34-like datasets sample items per class from a truncated
// exponential rank distribution, with or without a shared head of frequent
// items across classes.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <string_view>
#include <string>
#include <vector>

#include "mcldp/config.h"
#include "mcldp/dataset.h"
#include "mcldp/errors.h"
#include "mcldp/rng.h"

namespace mcldp {

enum class SynKind { kSyn1, kSyn2, kSyn34 };

inline std::string ToString(SynKind kind) {
  switch (kind) {
    case SynKind::kSyn1:
      return "syn1";
    case SynKind::kSyn2:
      return "syn2";
    case SynKind::kSyn34:
      return "syn34";
  }
  return "unknown";
}

inline SynKind ParseSynKind(const std::string& name) {
  if (name == "syn1") return SynKind::kSyn1;
  if (name == "syn2") return SynKind::kSyn2;
  if (name == "syn34" || name == "syn3" || name == "syn4") {
    return SynKind::kSyn34;
  }
  throw SpecError("unknown dataset kind '" + name + "'");
}

struct SynSpec {
  SynKind kind = SynKind::kSyn34;
  std::size_t classes = 5;
  std::size_t items = 2048;
  std::uint64_t total = 500000;  // N (SYN34-like only)
  double size_factor = 1.0;      // count multiplier (SYN1/SYN2-like only)
  double exp_scale_min = 0.01;   // per-class scales are spaced evenly
  double exp_scale_max = 0.1;
  double class_mean = 0.0;  // 0 means N / c
  double class_sd = 0.0;    // 0 means class_mean / 2
  bool global_overlap = true;
  std::uint64_t seed = 1;

  friend bool operator==(const SynSpec&, const SynSpec&) = default;
};

// Defaults for each kind: SYN1/SYN2-like use four classes over four items.
inline SynSpec DefaultSynSpec(SynKind kind) {
  SynSpec spec;
  spec.kind = kind;
  if (kind != SynKind::kSyn34) {
    spec.classes = 4;
    spec.items = 4;
    spec.total = 0;
  }
  return spec;
}

inline KeyValueConfig ToConfig(const SynSpec& spec) {
  return {{"kind", ToString(spec.kind)},
          {"classes", std::to_string(spec.classes)},
          {"items", std::to_string(spec.items)},
          {"total", std::to_string(spec.total)},
          {"size_factor", FormatNumber(spec.size_factor)},
          {"exp_scale_min", FormatNumber(spec.exp_scale_min)},
          {"exp_scale_max", FormatNumber(spec.exp_scale_max)},
          {"class_mean", FormatNumber(spec.class_mean)},
          {"class_sd", FormatNumber(spec.class_sd)},
          {"global_overlap", spec.global_overlap ? "true" : "false"},
          {"seed", std::to_string(spec.seed)}};
}

// Keys missing from `config` keep the defaults of its `kind`.
inline SynSpec SynSpecFromConfig(const KeyValueConfig& config) {
  auto get = [&](const char* key) -> const std::string* {
    const auto it = config.find(key);
    return it == config.end() ? nullptr : &it->second;
  };
  SynSpec spec =
      DefaultSynSpec(get("kind") ? ParseSynKind(*get("kind")) : SynKind::kSyn34);
  for (const auto& [key, value] : config) {
    if (key == "kind") continue;
    if (key == "classes") spec.classes = ParseCount(value, key);
    else if (key == "items") spec.items = ParseCount(value, key);
    else if (key == "total") spec.total = ParseCount(value, key);
    else if (key == "size_factor") spec.size_factor = ParseNumber(value, key);
    else if (key == "exp_scale_min") spec.exp_scale_min = ParseNumber(value, key);
    else if (key == "exp_scale_max") spec.exp_scale_max = ParseNumber(value, key);
    else if (key == "class_mean") spec.class_mean = ParseNumber(value, key);
    else if (key == "class_sd") spec.class_sd = ParseNumber(value, key);
    else if (key == "global_overlap") spec.global_overlap = ParseFlag(value, key);
    else if (key == "seed") spec.seed = ParseCount(value, key);
    else throw ParseError("unknown dataset key '" + key + "'", 0);
  }
  return spec;
}

namespace internal {

enum DatagenTag : std::uint64_t {
  kTagPairOrder = 0x47454e0001,
  kTagClassSizes = 0x47454e0002,
  kTagHeads = 0x47454e0003,
  kTagSamples = 0x47454e0004,
};

// Expands counts into pairs and shuffles them with a seeded stream.
inline LabeledDataset ShuffledFromCounts(const Grid<std::uint64_t>& counts,
                                         std::uint64_t seed) {
  LabeledDataset ordered = DatasetFromCounts(counts);
  std::vector<LabeledPair> pairs = ordered.pairs();
  Rng rng(DeriveSeed(seed, {kTagPairOrder}));
  Shuffle(pairs, rng);
  return LabeledDataset(counts.rows(), counts.cols(), std::move(pairs));
}

inline std::uint64_t Scaled(double count, double factor) {
  return static_cast<std::uint64_t>(std::llround(count * factor));
}

// Spreads `rest` as evenly as possible over items 1..d-1 of `row`.
inline void SpreadRemainder(Grid<std::uint64_t>& counts, std::size_t row,
                            std::uint64_t rest) {
  const std::size_t others = counts.cols() - 1;
  for (std::size_t i = 1; i <= others; ++i) {
    counts(row, i) = rest / others + (i - 1 < rest % others ? 1 : 0);
  }
}

// Standard normal by Box-Muller, so the draw is identical on every standard
// library.
inline double NormalDraw(Rng& rng) {
  double u1 = rng.Uniform();
  while (u1 <= 0.0) u1 = rng.Uniform();
  const double u2 = rng.Uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Integer sizes proportional to `weights` summing to `total`, each >= 1.
inline std::vector<std::uint64_t> Apportion(const std::vector<double>& weights,
                                            std::uint64_t total) {
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<std::uint64_t> sizes(weights.size());
  std::vector<std::pair<double, std::size_t>> frac;
  std::uint64_t used = 0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    const double exact = weights[j] / sum * static_cast<double>(total);
    sizes[j] = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(exact));
    used += sizes[j];
    frac.push_back({exact - std::floor(exact), j});
  }
  std::stable_sort(frac.begin(), frac.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });
  for (std::size_t t = 0; used < total; t = (t + 1) % frac.size()) {
    ++sizes[frac[t].second];
    ++used;
  }
  while (used > total) {
    const auto big = std::max_element(sizes.begin(), sizes.end());
    --*big;
    --used;
  }
  return sizes;
}

}  // namespace internal

// SYN1-like: every class holds n = 1.111e6 * s users and item 0 has
// frequency 10^(3+j) * s in class j, so the label-item association (PMI)
// varies while n and N stay fixed. SYN2-like: item 0 has frequency 1e4 * s in
// every class while the class sizes are {1.3e4, 2.11e5, 1.21e6, 3.01e6} * s.
// Remaining users of a class are spread evenly over items 1..d-1.
inline Grid<std::uint64_t> VarianceCounts(const SynSpec& spec) {
  if (spec.kind == SynKind::kSyn34) {
    throw SpecError("variance datasets are SYN1-like or SYN2-like");
  }
  if (spec.classes != 4) throw SpecError("variance datasets use four classes");
  if (spec.items < 2) throw SpecError("variance datasets need d >= 2");
  if (!(spec.size_factor > 0.0)) throw SpecError("size_factor must be > 0");
  Grid<std::uint64_t> counts(4, spec.items);
  for (std::size_t j = 0; j < 4; ++j) {
    std::uint64_t n = 0, f = 0;
    if (spec.kind == SynKind::kSyn1) {
      n = internal::Scaled(1.111e6, spec.size_factor);
      f = internal::Scaled(std::pow(10.0, 3.0 + static_cast<double>(j)),
                           spec.size_factor);
    } else {
      static constexpr double kSizes[] = {1.3e4, 2.11e5, 1.21e6, 3.01e6};
      n = internal::Scaled(kSizes[j], spec.size_factor);
      f = internal::Scaled(1e4, spec.size_factor);
    }
    if (f > n) throw SpecError("pair frequency exceeds class size");
    if (f == 0) throw SpecError("size_factor too small: empty target pair");
    counts(j, 0) = f;
    internal::SpreadRemainder(counts, j, n - f);
  }
  return counts;
}

inline LabeledDataset GenVarianceDataset(const SynSpec& spec) {
  return internal::ShuffledFromCounts(VarianceCounts(spec), spec.seed);
}

// Item order per class, most popular first.
struct SkewedLayout {
  std::vector<std::uint64_t> class_sizes;
  std::vector<double> class_scales;
  std::vector<std::vector<std::uint32_t>> ranking;  // class -> items by rank
};

inline constexpr std::size_t kHeadSize = 20;
inline constexpr std::size_t kSharedPool = 12;
inline constexpr std::size_t kSharedPerClass = 10;

inline SkewedLayout MakeSkewedLayout(const SynSpec& spec) {
  const std::size_t c = spec.classes, d = spec.items;
  if (c == 0 || d == 0) throw SpecError("need c >= 1 and d >= 1");
  if (spec.total < c) throw SpecError("need N >= c");
  if (!(spec.exp_scale_min > 0.0 && spec.exp_scale_max >= spec.exp_scale_min)) {
    throw SpecError("exponential scales must satisfy 0 < min <= max");
  }
  if (spec.global_overlap && d < kHeadSize + kSharedPool) {
    throw SpecError("overlap mode needs d >= 32");
  }
  if (!spec.global_overlap && d < kHeadSize * c) {
    throw SpecError("disjoint heads need d >= 20 c");
  }
  SkewedLayout layout;
  Rng size_rng(DeriveSeed(spec.seed, {internal::kTagClassSizes}));
  const double mean = spec.class_mean > 0.0
                          ? spec.class_mean
                          : static_cast<double>(spec.total) / c;
  const double sd = spec.class_sd > 0.0 ? spec.class_sd : mean / 2.0;
  std::vector<double> weights(c);
  for (double& w : weights) {
    w = std::max(1.0, mean + sd * internal::NormalDraw(size_rng));
  }
  layout.class_sizes = internal::Apportion(weights, spec.total);
  for (std::size_t j = 0; j < c; ++j) {
    layout.class_scales.push_back(
        c == 1 ? spec.exp_scale_min
               : spec.exp_scale_min + (spec.exp_scale_max - spec.exp_scale_min) *
                                          static_cast<double>(j) /
                                          static_cast<double>(c - 1));
  }

  Rng rng(DeriveSeed(spec.seed, {internal::kTagHeads}));
  std::vector<std::uint32_t> items(d);
  std::iota(items.begin(), items.end(), std::uint32_t{0});
  Shuffle(items, rng);
  layout.ranking.resize(c);
  if (spec.global_overlap) {
    // Items [0, 12) of the shuffled domain form the shared pool; each class
    // places 10 of them at random ranks within its top 20.
    const std::vector<std::uint32_t> pool(items.begin(),
                                          items.begin() + kSharedPool);
    const std::vector<std::uint32_t> rest(items.begin() + kSharedPool,
                                          items.end());
    for (std::size_t j = 0; j < c; ++j) {
      std::vector<std::uint32_t> shared = pool;
      Shuffle(shared, rng);
      shared.resize(kSharedPerClass);
      std::vector<std::uint32_t> own = rest;
      Shuffle(own, rng);
      std::vector<bool> slot(kHeadSize, false);
      std::vector<std::size_t> slots(kHeadSize);
      std::iota(slots.begin(), slots.end(), std::size_t{0});
      Shuffle(slots, rng);
      for (std::size_t s = 0; s < kSharedPerClass; ++s) slot[slots[s]] = true;
      std::set<std::uint32_t> used(shared.begin(), shared.end());
      auto& rank = layout.ranking[j];
      std::size_t next_shared = 0, next_own = 0;
      for (std::size_t r = 0; r < kHeadSize; ++r) {
        rank.push_back(slot[r] ? shared[next_shared++] : own[next_own++]);
      }
      for (; next_own < own.size(); ++next_own) rank.push_back(own[next_own]);
      // Unused pool members trail the class ranking.
      for (std::uint32_t v : pool) {
        if (!used.count(v)) rank.push_back(v);
      }
    }
  } else {
    // Class j owns items [20 j, 20 j + 20) of the shuffled domain as its
    // head; other classes' heads go to the very end of its ranking.
    const std::size_t heads = kHeadSize * c;
    for (std::size_t j = 0; j < c; ++j) {
      auto& rank = layout.ranking[j];
      rank.assign(items.begin() + kHeadSize * j,
                  items.begin() + kHeadSize * (j + 1));
      std::vector<std::uint32_t> tail(items.begin() + heads, items.end());
      Shuffle(tail, rng);
      rank.insert(rank.end(), tail.begin(), tail.end());
      for (std::size_t o = 0; o < c; ++o) {
        if (o == j) continue;
        rank.insert(rank.end(), items.begin() + kHeadSize * o,
                    items.begin() + kHeadSize * (o + 1));
      }
    }
  }
  return layout;
}

// Probability of each rank in a class: exp(-scale * rank), normalized over
// the d ranks.
inline std::vector<double> RankProbabilities(std::size_t d, double scale) {
  std::vector<double> p(d);
  double sum = 0.0;
  for (std::size_t r = 0; r < d; ++r) {
    p[r] = std::exp(-scale * static_cast<double>(r));
    sum += p[r];
  }
  for (double& x : p) x /= sum;
  return p;
}

inline LabeledDataset GenSkewedDataset(const SynSpec& spec) {
  if (spec.kind != SynKind::kSyn34) {
    throw SpecError("skewed datasets are SYN34-like");
  }
  const SkewedLayout layout = MakeSkewedLayout(spec);
  const std::size_t d = spec.items;
  std::vector<LabeledPair> pairs;
  pairs.reserve(spec.total);
  for (std::size_t j = 0; j < spec.classes; ++j) {
    const std::vector<double> prob =
        RankProbabilities(d, layout.class_scales[j]);
    std::vector<double> cdf(d);
    std::partial_sum(prob.begin(), prob.end(), cdf.begin());
    Rng rng(DeriveSeed(spec.seed, {internal::kTagSamples, j}));
    for (std::uint64_t u = 0; u < layout.class_sizes[j]; ++u) {
      const double x = rng.Uniform();
      auto r = static_cast<std::size_t>(
          std::upper_bound(cdf.begin(), cdf.end(), x) - cdf.begin());
      r = std::min(r, d - 1);
      pairs.push_back({static_cast<std::uint32_t>(j), layout.ranking[j][r]});
    }
  }
  Rng order(DeriveSeed(spec.seed, {internal::kTagPairOrder}));
  Shuffle(pairs, order);
  return LabeledDataset(spec.classes, d, std::move(pairs));
}

inline LabeledDataset GenerateDataset(const SynSpec& spec) {
  return spec.kind == SynKind::kSyn34 ? GenSkewedDataset(spec)
                                      : GenVarianceDataset(spec);
}

// ---------------------------------------------------------------------------
// CSV: optional "# c=<classes> d=<items>" comment, header "label,item", then
// one "label,item" row per user.

inline std::string FormatCsv(const LabeledDataset& data) {
  std::string out = "# c=" + std::to_string(data.classes()) +
                    " d=" + std::to_string(data.items()) + "\nlabel,item\n";
  out.reserve(out.size() + data.size() * 12);
  char buf[24];
  for (const LabeledPair& pr : data.pairs()) {
    out.append(buf, std::to_chars(buf, buf + sizeof(buf), pr.label).ptr);
    out.push_back(',');
    out.append(buf, std::to_chars(buf, buf + sizeof(buf), pr.item).ptr);
    out.push_back('\n');
  }
  return out;
}

inline void WriteCsv(const LabeledDataset& data, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  const std::string text = FormatCsv(data);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw InputError("failed writing '" + path + "'");
}

namespace internal {

inline bool ParseUint(const char*& p, const char* end, std::uint64_t& value) {
  const auto res = std::from_chars(p, end, value);
  if (res.ec != std::errc() || res.ptr == p) return false;
  p = res.ptr;
  return true;
}

// Reads "c=<n>" and "d=<n>" tokens from a comment line.
inline void ParseDomainComment(const std::string& line, std::size_t number,
                               std::uint64_t& c, std::uint64_t& d) {
  std::istringstream in(line.substr(1));
  std::string token;
  while (in >> token) {
    if (token.size() < 3 || token[1] != '=') continue;
    std::uint64_t* target =
        token[0] == 'c' ? &c : token[0] == 'd' ? &d : nullptr;
    if (!target) continue;
    const char* p = token.data() + 2;
    const char* end = token.data() + token.size();
    if (!ParseUint(p, end, *target) || p != end) {
      throw ParseError("bad domain declaration '" + token + "'", number);
    }
  }
}

}  // namespace internal

inline LabeledDataset ParseCsv(const std::string& text) {
  std::uint64_t declared_c = 0, declared_d = 0;
  bool header = false;
  std::vector<LabeledPair> pairs;
  std::uint64_t max_label = 0, max_item = 0;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::size_t len = eol - pos;
    if (len > 0 && text[pos + len - 1] == '\r') --len;
    const std::string_view line(text.data() + pos, len);
    pos = eol + 1;
    ++number;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (header) throw ParseError("comment after header", number);
      internal::ParseDomainComment(std::string(line), number, declared_c,
                                   declared_d);
      continue;
    }
    if (!header) {
      if (line != "label,item") {
        throw ParseError("missing header 'label,item'", number);
      }
      header = true;
      continue;
    }
    const char* p = line.data();
    const char* end = p + line.size();
    std::uint64_t label = 0, item = 0;
    if (!internal::ParseUint(p, end, label) || p == end || *p != ',') {
      throw ParseError("expected 'label,item'", number);
    }
    ++p;
    if (!internal::ParseUint(p, end, item) || p != end) {
      throw ParseError("expected 'label,item'", number);
    }
    if (label > 0xffffffffu || item > 0xffffffffu) {
      throw ParseError("index too large", number);
    }
    if ((declared_c && label >= declared_c) ||
        (declared_d && item >= declared_d)) {
      throw ParseError("index outside the declared domain", number);
    }
    max_label = std::max(max_label, label);
    max_item = std::max(max_item, item);
    pairs.push_back(
        {static_cast<std::uint32_t>(label), static_cast<std::uint32_t>(item)});
  }
  if (!header) throw ParseError("missing header 'label,item'", number + 1);
  if (pairs.empty()) throw ParseError("no data rows", number + 1);
  const std::size_t c = declared_c ? declared_c : max_label + 1;
  const std::size_t d = declared_d ? declared_d : max_item + 1;
  return LabeledDataset(c, d, std::move(pairs));
}

inline LabeledDataset LoadCsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  return ParseCsv(text);
}

}  // namespace mcldp

#endif  // MCLDP_DATAGEN_H_
