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

#ifndef MCLDP_DATASET_H_
#define MCLDP_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mcldp/errors.h"

namespace mcldp {

// Dense row-major matrix; rows are classes, columns items.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  T RowSum(std::size_t r) const {
    T s{};
    for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c);
    return s;
  }
  T ColSum(std::size_t c) const {
    T s{};
    for (std::size_t r = 0; r < rows_; ++r) s += (*this)(r, c);
    return s;
  }

  bool SameShape(const Grid& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

struct LabeledPair {
  std::uint32_t label = 0;
  std::uint32_t item = 0;
  friend bool operator==(const LabeledPair&, const LabeledPair&) = default;
};

// One (label, item) pair per user over declared class and item domains.
class LabeledDataset {
 public:
  LabeledDataset() = default;
  LabeledDataset(std::size_t classes, std::size_t items,
                 std::vector<LabeledPair> pairs)
      : classes_(classes), items_(items), pairs_(std::move(pairs)) {
    if (classes_ == 0 || items_ == 0) {
      throw InputError("dataset needs at least one class and one item");
    }
    if (pairs_.empty()) throw InputError("dataset is empty");
    for (std::size_t u = 0; u < pairs_.size(); ++u) {
      if (pairs_[u].label >= classes_ || pairs_[u].item >= items_) {
        throw InputError("user " + std::to_string(u) +
                         " holds a pair outside the declared domains");
      }
    }
  }

  std::size_t size() const { return pairs_.size(); }
  std::size_t classes() const { return classes_; }
  std::size_t items() const { return items_; }
  const std::vector<LabeledPair>& pairs() const { return pairs_; }
  const LabeledPair& operator[](std::size_t u) const { return pairs_[u]; }

  // f(C, I).
  Grid<double> TrueCounts() const {
    Grid<double> counts(classes_, items_);
    for (const auto& pr : pairs_) counts(pr.label, pr.item) += 1.0;
    return counts;
  }

  // n per class.
  std::vector<double> ClassSizes() const {
    std::vector<double> sizes(classes_, 0.0);
    for (const auto& pr : pairs_) sizes[pr.label] += 1.0;
    return sizes;
  }

  friend bool operator==(const LabeledDataset&,
                         const LabeledDataset&) = default;

 private:
  std::size_t classes_ = 0;
  std::size_t items_ = 0;
  std::vector<LabeledPair> pairs_;
};

// Builds a dataset with exactly counts(C, I) users holding (C, I), in
// row-major order.
inline LabeledDataset DatasetFromCounts(const Grid<std::uint64_t>& counts) {
  std::vector<LabeledPair> pairs;
  for (std::size_t c = 0; c < counts.rows(); ++c) {
    for (std::size_t i = 0; i < counts.cols(); ++i) {
      for (std::uint64_t k = 0; k < counts(c, i); ++k) {
        pairs.push_back({static_cast<std::uint32_t>(c),
                         static_cast<std::uint32_t>(i)});
      }
    }
  }
  return LabeledDataset(counts.rows(), counts.cols(), std::move(pairs));
}

}  // namespace mcldp

#endif  // MCLDP_DATASET_H_
