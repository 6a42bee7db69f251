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

#ifndef MCLDP_REPORT_IO_H_
#define MCLDP_REPORT_IO_H_

// Text renderings of results. Numbers use the shortest round-trip form, so
// identical results give byte-identical files.
//
// Frequency table CSV columns: class,item,raw,calibrated
// Top-k JSON: {"<class>": [{"item": i, "estimate": e}, ...], ...}

#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"
#include "mcldp/config.h"
#include "mcldp/frameworks.h"
#include "mcldp/topk.h"

namespace mcldp {

// Lines "# key = value" carrying the effective configuration.
inline std::string ConfigHeader(const KeyValueConfig& config) {
  std::string out;
  for (const auto& [key, value] : config) {
    out += "# " + key + " = " + value + "\n";
  }
  return out;
}

inline std::string FrequencyTableCsv(const FrequencyTable& t) {
  std::string out = "class,item,raw,calibrated\n";
  for (std::size_t c = 0; c < t.raw.rows(); ++c) {
    for (std::size_t i = 0; i < t.raw.cols(); ++i) {
      out += std::to_string(c) + "," + std::to_string(i) + "," +
             FormatNumber(t.raw(c, i)) + "," +
             FormatNumber(t.calibrated(c, i)) + "\n";
    }
  }
  return out;
}

inline nlohmann::ordered_json FrequencySummaryJson(
    const FrequencyTable& t, const Grid<double>* truth = nullptr) {
  nlohmann::ordered_json j;
  j["framework"] = ToString(t.framework);
  j["epsilon"] = t.epsilon;
  if (t.eps_label > 0.0) {
    j["eps_label"] = t.eps_label;
    j["eps_item"] = t.eps_item;
  }
  j["seed"] = t.seed;
  j["classes"] = t.raw.rows();
  j["items"] = t.raw.cols();
  j["report_bits"] = t.report_bits;
  j["class_counts"] = t.class_counts;
  if (truth) {
    double sum = 0.0;
    for (std::size_t k = 0; k < truth->size(); ++k) {
      const double e = t.calibrated.data()[k] - truth->data()[k];
      sum += e * e;
    }
    j["rmse"] = std::sqrt(sum / static_cast<double>(truth->size()));
  }
  return j;
}

inline nlohmann::ordered_json TopKJson(const TopKResult& r) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < r.per_class.size(); ++c) {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const RankedItem& item : r.per_class[c]) {
      list.push_back({{"item", item.item}, {"estimate", item.estimate}});
    }
    j[std::to_string(c)] = std::move(list);
  }
  return j;
}

}  // namespace mcldp

#endif  // MCLDP_REPORT_IO_H_
