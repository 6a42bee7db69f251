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


// mcldp: data generation, frequency and top-k experiments, variance checks
// and privacy audits from the command line.
//
// Exit codes: 0 success, 2 usage or configuration error, 1 runtime failure
// (including a failed audit).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mcldp/mcldp.h"
#include "mcldp/report_io.h"

namespace {

using mcldp::FormatNumber;
using mcldp::KeyValueConfig;

// Errors that map to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string Join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ",";
    out += parts[i];
  }
  return out;
}

std::string JoinNumbers(const std::vector<double>& values) {
  std::vector<std::string> parts;
  for (double v : values) parts.push_back(FormatNumber(v));
  return Join(parts);
}

// Output goes to `path`, or standard output when the path is empty or "-".
void Emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

struct Common {
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  bool serial = false;

  std::size_t EffectiveThreads() const {
    if (serial) return 1;
    return threads ? threads : mcldp::DefaultThreadCount();
  }
};

void AddCommon(CLI::App* app, Common& common) {
  app->add_option("--seed", common.seed, "Master seed");
  app->add_option("--threads", common.threads,
                  "Worker threads (default: $MCLDP_THREADS or all cores)");
  app->add_flag("--serial", common.serial, "Run trials sequentially");
}

// ---------------------------------------------------------------------------
// Config files: keys are long option names without dashes. Values from the
// file are injected only for options absent from the command line.

std::vector<std::string> InjectConfig(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || args.empty()) return args;
  KeyValueConfig config;
  try {
    config = mcldp::LoadKeyValueConfig(path);
  } catch (const mcldp::ParseError& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  std::vector<std::string> out(args);
  for (const auto& [key, value] : config) {
    const std::string flag = "--" + key;
    bool given = false;
    for (const auto& a : args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) given = true;
    }
    if (given) continue;
    if (value == "true" || value == "false") {
      if (value == "true") out.push_back(flag);
      continue;
    }
    out.push_back(flag + "=" + value);
  }
  return out;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  Common common;
  std::string kind = "syn34";
  std::size_t classes = 0;
  std::size_t items = 0;
  std::uint64_t total = 500000;
  double size_factor = 1.0;
  double scale_min = 0.01;
  double scale_max = 0.1;
  double class_mean = 0.0;
  double class_sd = 0.0;
  bool overlap = true;
  std::string out;
};

mcldp::SynSpec SpecOf(const GenArgs& g) {
  mcldp::SynSpec spec;
  try {
    spec = mcldp::DefaultSynSpec(mcldp::ParseSynKind(g.kind));
  } catch (const mcldp::SpecError& e) {
    throw UsageError(e.what());
  }
  if (g.classes) spec.classes = g.classes;
  if (g.items) spec.items = g.items;
  if (spec.kind == mcldp::SynKind::kSyn34) spec.total = g.total;
  spec.size_factor = g.size_factor;
  spec.exp_scale_min = g.scale_min;
  spec.exp_scale_max = g.scale_max;
  spec.class_mean = g.class_mean;
  spec.class_sd = g.class_sd;
  spec.global_overlap = g.overlap;
  spec.seed = g.common.seed;
  return spec;
}

int RunGen(const GenArgs& g) {
  const mcldp::SynSpec spec = SpecOf(g);
  const mcldp::LabeledDataset data = mcldp::GenerateDataset(spec);
  std::string text = mcldp::ConfigHeader(mcldp::ToConfig(spec));
  text += mcldp::FormatCsv(data);
  Emit(g.out, text);
  return 0;
}

// ---------------------------------------------------------------------------
// freq

struct FreqArgs {
  Common common;
  std::string data;
  std::vector<std::string> frameworks{"all"};
  std::vector<double> eps{1.0};
  std::size_t trials = 20;
  double split = 0.5;
  std::string out;
  std::string json;
  std::string table;
};

std::vector<mcldp::FrequencyFramework> FrequencyFrameworks(
    const std::vector<std::string>& names) {
  std::vector<mcldp::FrequencyFramework> out;
  for (const auto& n : names) {
    if (n == "all") {
      out.assign(std::begin(mcldp::kAllFrequencyFrameworks),
                 std::end(mcldp::kAllFrequencyFrameworks));
      continue;
    }
    try {
      out.push_back(mcldp::ParseFrequencyFramework(n));
    } catch (const mcldp::ParameterError& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

int RunFreq(const FreqArgs& a) {
  const auto frameworks = FrequencyFrameworks(a.frameworks);
  const mcldp::LabeledDataset data = mcldp::LoadCsv(a.data);
  const mcldp::Grid<double> truth = data.TrueCounts();
  const KeyValueConfig effective{
      {"data", a.data},
      {"framework", Join(a.frameworks)},
      {"eps", JoinNumbers(a.eps)},
      {"trials", std::to_string(a.trials)},
      {"split", FormatNumber(a.split)},
      {"seed", std::to_string(a.common.seed)},
      {"classes", std::to_string(data.classes())},
      {"items", std::to_string(data.items())},
      {"users", std::to_string(data.size())}};
  std::string csv = mcldp::ConfigHeader(effective);
  csv += "framework,epsilon,trials,seed,rmse_mean,rmse_sd\n";
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (mcldp::FrequencyFramework f : frameworks) {
    for (std::size_t e = 0; e < a.eps.size(); ++e) {
      mcldp::FrequencyExperiment exp;
      exp.framework = f;
      exp.epsilon = a.eps[e];
      exp.trials = a.trials;
      exp.seed = a.common.seed;
      exp.split_fraction = a.split;
      exp.threads = a.common.EffectiveThreads();
      const mcldp::FrequencySummary s = mcldp::RunFrequencyTrials(data, exp);
      csv += mcldp::ToString(f) + "," + FormatNumber(exp.epsilon) + "," +
             std::to_string(exp.trials) + "," + std::to_string(exp.seed) +
             "," + FormatNumber(s.rmse_stats.mean) + "," +
             FormatNumber(s.rmse_stats.sd) + "\n";
      rows.push_back({{"framework", mcldp::ToString(f)},
                      {"epsilon", exp.epsilon},
                      {"trials", exp.trials},
                      {"seed", exp.seed},
                      {"rmse_mean", s.rmse_stats.mean},
                      {"rmse_sd", s.rmse_stats.sd}});
      if (!a.table.empty()) {
        // The trial-0 table of this configuration.
        const mcldp::FrequencyTable t = mcldp::RunFrequencyFramework(
            f, data, exp.epsilon, mcldp::TrialSeed(exp.seed, 0),
            exp.split_fraction);
        const std::string stem =
            a.table + "_" + mcldp::ToString(f) + "_" + FormatNumber(exp.epsilon);
        Emit(stem + ".csv",
             mcldp::ConfigHeader(effective) + mcldp::FrequencyTableCsv(t));
        nlohmann::ordered_json summary = mcldp::FrequencySummaryJson(t, &truth);
        summary["config"] = effective;
        Emit(stem + ".json", summary.dump(2) + "\n");
      }
    }
  }
  Emit(a.out, csv);
  if (!a.json.empty()) {
    nlohmann::ordered_json doc{{"config", effective}, {"rows", rows}};
    Emit(a.json, doc.dump(2) + "\n");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// topk

struct TopKArgs {
  Common common;
  std::string data;
  std::vector<std::string> frameworks{"pts-opt", "pts-base"};
  std::vector<std::size_t> ks{10};
  std::vector<double> eps{4.0};
  std::vector<std::string> ablate;
  std::size_t trials = 20;
  double a = 0.2;
  double b = 2.0;
  double split = 0.5;
  std::size_t it_f = 0;
  bool per_class = false;
  std::string out;
  std::string json;
};

struct Variant {
  std::string name;
  mcldp::TopKFramework framework = mcldp::TopKFramework::kPtsOptimized;
  std::optional<mcldp::PtsMiningOptions> options;
};

std::vector<Variant> TopKVariants(const TopKArgs& a) {
  std::vector<Variant> out;
  for (const auto& n : a.frameworks) {
    if (n == "all") {
      for (const char* f :
           {"pts-opt", "ptj-opt", "pts-base", "ptj-base", "hec-base"}) {
        out.push_back({f, mcldp::ParseTopKFramework(f), std::nullopt});
      }
      continue;
    }
    try {
      out.push_back({n, mcldp::ParseTopKFramework(n), std::nullopt});
    } catch (const mcldp::ParameterError& e) {
      throw UsageError(e.what());
    }
  }
  // Each ablation switches one optimization on over the PTS baseline.
  for (const auto& t : a.ablate) {
    mcldp::PtsMiningOptions o = mcldp::PtsMiningOptions::Baseline();
    if (t == "shuffling") {
      o.shuffling = true;
    } else if (t == "vp") {
      o.validity = true;
    } else if (t == "cp") {
      o.correlated = true;
      o.global_candidates = true;
    } else if (t == "global") {
      o.global_candidates = true;
    } else {
      throw UsageError("unknown ablation '" + t +
                       "' (expected shuffling, vp, cp or global)");
    }
    mcldp::TopKExperiment probe;
    probe.pts_options = o;
    out.push_back({mcldp::VariantName(probe),
                   mcldp::TopKFramework::kPtsBaseline, o});
  }
  return out;
}

int RunTopK(const TopKArgs& a) {
  const std::vector<Variant> variants = TopKVariants(a);
  const mcldp::LabeledDataset data = mcldp::LoadCsv(a.data);
  std::vector<std::string> k_text;
  for (std::size_t k : a.ks) {
    if (k == 0 || k > data.items()) {
      throw UsageError("k = " + std::to_string(k) +
                       " exceeds the item domain of " +
                       std::to_string(data.items()));
    }
    k_text.push_back(std::to_string(k));
  }
  std::vector<std::string> names;
  for (const auto& v : variants) names.push_back(v.name);
  const KeyValueConfig effective{
      {"data", a.data},
      {"framework", Join(names)},
      {"k", Join(k_text)},
      {"eps", JoinNumbers(a.eps)},
      {"trials", std::to_string(a.trials)},
      {"a", FormatNumber(a.a)},
      {"b", FormatNumber(a.b)},
      {"split", FormatNumber(a.split)},
      {"it-f", std::to_string(a.it_f)},
      {"seed", std::to_string(a.common.seed)},
      {"classes", std::to_string(data.classes())},
      {"items", std::to_string(data.items())},
      {"users", std::to_string(data.size())}};
  std::string csv = mcldp::ConfigHeader(effective);
  csv += a.per_class
             ? "variant,epsilon,k,trials,seed,class,f1,ncr,cp_feasible_rate\n"
             : "variant,epsilon,k,trials,seed,f1_mean,f1_sd,ncr_mean,ncr_sd\n";
  nlohmann::ordered_json lists = nlohmann::ordered_json::object();
  for (const Variant& v : variants) {
    for (double eps : a.eps) {
      for (std::size_t k : a.ks) {
        mcldp::TopKExperiment exp;
        exp.framework = v.framework;
        exp.pts_options = v.options;
        exp.epsilon = eps;
        exp.config.k = k;
        exp.config.a = a.a;
        exp.config.b = a.b;
        exp.config.split_fraction = a.split;
        exp.config.it_f = a.it_f;
        exp.trials = a.trials;
        exp.seed = a.common.seed;
        exp.threads = a.common.EffectiveThreads();
        exp.config.Validate(data.items());
        const mcldp::TopKSummary s = mcldp::RunTopKTrials(data, exp);
        const std::string head = v.name + "," + FormatNumber(eps) + "," +
                                 std::to_string(k) + "," +
                                 std::to_string(a.trials) + "," +
                                 std::to_string(a.common.seed) + ",";
        if (a.per_class) {
          for (std::size_t c = 0; c < data.classes(); ++c) {
            csv += head + std::to_string(c) + "," +
                   FormatNumber(s.f1_per_class[c]) + "," +
                   FormatNumber(s.ncr_per_class[c]) + "," +
                   FormatNumber(s.cp_feasible_rate[c]) + "\n";
          }
        } else {
          csv += head + FormatNumber(s.f1_stats.mean) + "," +
                 FormatNumber(s.f1_stats.sd) + "," +
                 FormatNumber(s.ncr_stats.mean) + "," +
                 FormatNumber(s.ncr_stats.sd) + "\n";
        }
        if (!a.json.empty()) {
          const mcldp::TopKResult r =
              mcldp::RunTopKVariant(data, exp, mcldp::TrialSeed(exp.seed, 0));
          lists[v.name + "/eps=" + FormatNumber(eps) + "/k=" +
                std::to_string(k)] = mcldp::TopKJson(r);
        }
      }
    }
  }
  Emit(a.out, csv);
  if (!a.json.empty()) {
    nlohmann::ordered_json doc{{"config", effective}, {"trial0", lists}};
    Emit(a.json, doc.dump(2) + "\n");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// var

struct VarArgs {
  Common common;
  std::string kind = "syn1";
  double size_factor = 0.01;
  std::vector<double> eps{0.5, 1.0, 2.0};
  std::size_t trials = 1000;
  double split = 0.5;
  std::string out;
};

int RunVar(const VarArgs& a) {
  mcldp::SynSpec spec;
  try {
    spec = mcldp::DefaultSynSpec(mcldp::ParseSynKind(a.kind));
  } catch (const mcldp::SpecError& e) {
    throw UsageError(e.what());
  }
  if (spec.kind == mcldp::SynKind::kSyn34) {
    throw UsageError("var expects --kind syn1 or syn2");
  }
  spec.size_factor = a.size_factor;
  spec.seed = a.common.seed;
  const mcldp::LabeledDataset data = mcldp::GenVarianceDataset(spec);
  std::vector<std::pair<std::size_t, std::size_t>> targets;
  for (std::size_t c = 0; c < data.classes(); ++c) targets.push_back({c, 0});
  const auto rows = mcldp::CompareVarianceReport(
      data, targets, a.eps, a.trials, a.common.seed, a.split,
      a.common.EffectiveThreads());
  const KeyValueConfig effective{{"kind", a.kind},
                                 {"size-factor", FormatNumber(a.size_factor)},
                                 {"eps", JoinNumbers(a.eps)},
                                 {"trials", std::to_string(a.trials)},
                                 {"split", FormatNumber(a.split)},
                                 {"seed", std::to_string(a.common.seed)},
                                 {"users", std::to_string(data.size())}};
  std::string csv = mcldp::ConfigHeader(effective);
  csv +=
      "epsilon,class,item,f,n,pmi,var_pts,var_cp,analytic_var_cp,"
      "exact_var_cp,gap_bound,gap_holds\n";
  std::size_t violations = 0;
  for (const auto& r : rows) {
    csv += FormatNumber(r.epsilon) + "," + std::to_string(r.cls) + "," +
           std::to_string(r.item) + "," + FormatNumber(r.f) + "," +
           FormatNumber(r.n) + "," + FormatNumber(r.pmi) + "," +
           FormatNumber(r.var_pts) + "," + FormatNumber(r.var_cp) + "," +
           FormatNumber(r.analytic_cp) + "," + FormatNumber(r.exact_cp) +
           "," + FormatNumber(r.gap_bound) + "," +
           (r.gap_holds ? "1" : "0") + "\n";
    violations += !r.gap_holds;
  }
  Emit(a.out, csv);
  if (violations) {
    std::cerr << violations << " row(s) violate the variance-gap bound\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// audit

struct AuditArgs {
  std::string mech = "grr";
  double eps = 1.0;
  std::size_t classes = 2;
  std::size_t items = 2;
  double label_share = 0.5;
};

int RunAudit(const AuditArgs& a) {
  mcldp::AuditSpec spec;
  try {
    spec.kind = mcldp::ParseMechanismKind(a.mech);
  } catch (const mcldp::ParameterError& e) {
    throw UsageError(e.what());
  }
  spec.epsilon = a.eps;
  spec.classes = a.classes;
  spec.items = a.items;
  spec.label_share = a.label_share;
  const double ratio = mcldp::PrivacyAudit(spec);
  const bool pass = ratio <= a.eps + mcldp::tolerance::kAuditSlack;
  char line[256];
  std::snprintf(line, sizeof(line),
                "mechanism=%s eps=%s classes=%zu items=%zu "
                "max_log_ratio=%.17g %s\n",
                a.mech.c_str(), FormatNumber(a.eps).c_str(), a.classes,
                a.items, ratio, pass ? "PASS" : "FAIL");
  std::cout << line;
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-class item mining under local differential privacy"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path,
                 "Key-value file of option defaults (flags win)");

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a synthetic dataset");
  AddCommon(gen_cmd, gen.common);
  gen_cmd->add_option("--kind", gen.kind, "syn1, syn2 or syn34");
  gen_cmd->add_option("--classes", gen.classes, "Class count c");
  gen_cmd->add_option("--items", gen.items, "Item domain size d");
  gen_cmd->add_option("--n", gen.total, "Users N (syn34)");
  gen_cmd->add_option("--size-factor", gen.size_factor,
                      "Count multiplier (syn1, syn2)")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--scale-min", gen.scale_min, "Smallest class scale");
  gen_cmd->add_option("--scale-max", gen.scale_max, "Largest class scale");
  gen_cmd->add_option("--class-mean", gen.class_mean, "Mean class size");
  gen_cmd->add_option("--class-sd", gen.class_sd, "Class size deviation");
  gen_cmd->add_option("--overlap", gen.overlap,
                      "Share head items across classes (true/false)");
  gen_cmd->add_option("--out", gen.out, "Output CSV")->required();

  FreqArgs freq;
  CLI::App* freq_cmd =
      app.add_subcommand("freq", "Frequency estimation RMSE experiments");
  AddCommon(freq_cmd, freq.common);
  freq_cmd->add_option("--data", freq.data, "Dataset CSV")->required();
  freq_cmd->add_option("--framework", freq.frameworks,
                       "hec, ptj, pts, pts-cp or all")
      ->delimiter(',');
  freq_cmd->add_option("--eps", freq.eps, "Privacy budgets")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  freq_cmd->add_option("--trials", freq.trials, "Trials per budget")
      ->check(CLI::PositiveNumber);
  freq_cmd->add_option("--split", freq.split, "Label share of the budget")
      ->check(CLI::Range(0.0, 1.0));
  freq_cmd->add_option("--out", freq.out, "RMSE table CSV (default stdout)");
  freq_cmd->add_option("--json", freq.json, "JSON summary");
  freq_cmd->add_option("--table", freq.table,
                       "Prefix for trial-0 frequency tables (CSV + JSON)");

  TopKArgs topk;
  CLI::App* topk_cmd = app.add_subcommand("topk", "Top-k mining experiments");
  AddCommon(topk_cmd, topk.common);
  topk_cmd->add_option("--data", topk.data, "Dataset CSV")->required();
  topk_cmd->add_option("--framework", topk.frameworks,
                       "pts-opt, ptj-opt, pts-base, ptj-base, hec-base, all")
      ->delimiter(',');
  topk_cmd->add_option("--k", topk.ks, "Target counts")->delimiter(',');
  topk_cmd->add_option("--eps", topk.eps, "Privacy budgets")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  topk_cmd->add_option("--ablate", topk.ablate,
                       "Baseline plus one optimization: shuffling, vp, cp, "
                       "global")
      ->delimiter(',');
  topk_cmd->add_option("--trials", topk.trials, "Trials")
      ->check(CLI::PositiveNumber);
  topk_cmd->add_option("--a", topk.a, "Phase-1 user fraction");
  topk_cmd->add_option("--b", topk.b, "Noise gate multiplier");
  topk_cmd->add_option("--split", topk.split, "Label share of the budget");
  topk_cmd->add_option("--it-f", topk.it_f, "Phase-1 rounds (0: IT/2)");
  topk_cmd->add_flag("--per-class", topk.per_class, "Per-class rows");
  topk_cmd->add_option("--out", topk.out, "Metrics CSV (default stdout)");
  topk_cmd->add_option("--json", topk.json, "Trial-0 top-k lists as JSON");

  VarArgs var;
  CLI::App* var_cmd =
      app.add_subcommand("var", "Empirical against analytic variance");
  AddCommon(var_cmd, var.common);
  var_cmd->add_option("--kind", var.kind, "syn1 or syn2");
  var_cmd->add_option("--size-factor", var.size_factor, "Count multiplier")
      ->check(CLI::PositiveNumber);
  var_cmd->add_option("--eps", var.eps, "Privacy budgets")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  var_cmd->add_option("--trials", var.trials, "Trials per budget")
      ->check(CLI::PositiveNumber);
  var_cmd->add_option("--split", var.split, "Label share of the budget");
  var_cmd->add_option("--out", var.out, "Report CSV (default stdout)");

  AuditArgs audit;
  CLI::App* audit_cmd =
      app.add_subcommand("audit", "Exhaustive privacy-loss audit");
  audit_cmd->add_option("--mech", audit.mech, "grr, oue, vp or cp")
      ->required();
  audit_cmd->add_option("--eps", audit.eps, "Privacy budget")
      ->required()
      ->check(CLI::PositiveNumber);
  audit_cmd->add_option("--classes", audit.classes, "Class count (cp)");
  audit_cmd->add_option("--items", audit.items, "Item domain size");
  audit_cmd->add_option("--label-share", audit.label_share,
                        "Label share of the budget (cp)");

  try {
    std::vector<std::string> args(argv, argv + argc);
    args = InjectConfig(args);
    std::vector<const char*> raw;
    for (const auto& s : args) raw.push_back(s.c_str());
    try {
      app.parse(static_cast<int>(raw.size()), raw.data());
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      app.exit(e);
      return 2;
    }
    if (*gen_cmd) return RunGen(gen);
    if (*freq_cmd) return RunFreq(freq);
    if (*topk_cmd) return RunTopK(topk);
    if (*var_cmd) return RunVar(var);
    if (*audit_cmd) return RunAudit(audit);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mcldp::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mcldp::SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
