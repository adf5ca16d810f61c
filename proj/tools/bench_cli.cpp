// Copyright 2026 The qkb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// bench: command-line driver for the qkb experiments.
//
//   bench run      one seeded benchmark, JSON report
//   bench sweep    QKNN accuracy against Pauli noise probability, CSV
//   bench compare  QKNN / CKNN / QNN on one shared split, CSV row
//   bench select   chi-square feature scores for a dataset
//
// Every flag can also be given in a JSON file passed with --config (keys use
// underscores: --angle-scale <-> "angle_scale"); flags win over the file.
// A report written by `bench run` is itself a valid --config file.
//
// Exit status: 0 ok, 1 a pipeline stage failed, 2 bad arguments.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qkb/evalbench.hpp"

namespace {

using nlohmann::json;
using qkb::bench::BenchConfig;

constexpr int kOk = 0;
constexpr int kStageError = 1;
constexpr int kBadArguments = 2;

struct BadArguments : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Kind { Int, UInt, Real, Text, Bool };

struct FlagSpec {
  const char* flag;
  const char* key;
  Kind kind;
  const char* help;
};

// Flags that map directly onto BenchConfig keys.
const std::vector<FlagSpec> kBaseFlags = {
    {"--dataset", "dataset", Kind::Text, "wdbc | iris | banknote"},
    {"--data-dir", "data_dir", Kind::Text, "directory holding the UCI files"},
    {"--seed", "seed", Kind::UInt, "master seed (split, sampling, noise, init)"},
    {"--k", "k", Kind::UInt, "neighbours for QKNN and CKNN"},
    {"--features", "features", Kind::Int, "top-k chi-square features kept"},
    {"--bins", "bins", Kind::Int, "equal-width bins for chi-square"},
    {"--test-fraction", "test_fraction", Kind::Real, "held-out fraction per class"},
    {"--angle-scale", "angle_scale", Kind::Real, "encoding radians per unit feature"},
    {"--feature-map-angle", "feature_map_angle", Kind::Real, "IsingXY angle of the feature map"},
    {"--feature-map", "feature_map", Kind::Bool, "apply the entangling feature map (true|false)"},
    {"--distance", "distance", Kind::Text, "exact | sampled"},
    {"--shots", "shots", Kind::UInt, "swap-test shots in sampled mode"},
    {"--qnn-layers", "qnn_layers", Kind::Int, "variational layers"},
    {"--qnn-layer", "qnn_layer", Kind::Text, "strongly-entangling | rz-ring | rz-chain"},
    {"--learning-rate", "learning_rate", Kind::Real, "QNN gradient-descent step"},
    {"--epochs", "epochs", Kind::Int, "QNN epochs"},
    {"--init-scale", "init_scale", Kind::Real, "QNN initial parameter half-width"},
};

const std::vector<FlagSpec> kRunFlags = {
    {"--model", "model", Kind::Text, "qknn | cknn | qnn"},
    {"--out", "out", Kind::Text, "report path (.json); stdout when omitted"},
};

const std::vector<FlagSpec> kSweepFlags = {
    {"--p-start", "p_start", Kind::Real, "first noise probability"},
    {"--p-stop", "p_stop", Kind::Real, "last noise probability (inclusive)"},
    {"--p-step", "p_step", Kind::Real, "noise probability step"},
    {"--trials", "trials", Kind::Int, "trajectory trials per p"},
    {"--mitigate", "mitigate", Kind::Text, "none | repeat-vote | physical-code"},
    {"--noise", "noise", Kind::Text, "bit_flip | phase_flip | bit_phase_flip | mixed_pauli"},
    {"--injection", "injection", Kind::Text, "after-encoding | after-feature-map | both"},
    {"--code-length", "code_length", Kind::Int, "repetition-code length (odd)"},
    {"--threads", "threads", Kind::UInt, "worker threads (0 = all cores)"},
    {"--out", "out", Kind::Text, "CSV path; stdout when omitted"},
};

const std::vector<FlagSpec> kCompareFlags = {
    {"--out", "out", Kind::Text, "CSV path; stdout when omitted"},
};

const std::vector<FlagSpec> kSelectFlags = {
    {"--policy", "policy", Kind::Text, "alpha=F | topk=K"},
    {"--out", "out", Kind::Text, "JSON path; stdout when omitted"},
};

json convert(const FlagSpec& f, const std::string& text) {
  try {
    std::size_t used = 0;
    json v;
    switch (f.kind) {
      case Kind::Int: v = std::stoi(text, &used); break;
      case Kind::UInt:
        if (!text.empty() && text[0] == '-') throw std::invalid_argument("negative");
        v = std::stoull(text, &used);
        break;
      case Kind::Real: v = std::stod(text, &used); break;
      case Kind::Text: return text;
      case Kind::Bool:
        if (text == "true" || text == "1" || text == "on") return true;
        if (text == "false" || text == "0" || text == "off") return false;
        throw std::invalid_argument("not a boolean");
    }
    if (used != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw BadArguments(std::string(f.flag) + ": cannot parse '" + text + "'");
  }
}

struct Command {
  explicit Command(CLI::App* a) : app(a) {}

  CLI::App* app;
  std::vector<FlagSpec> flags;
  std::map<std::string, std::string> values;  // key -> raw text
  std::map<std::string, CLI::Option*> options;
  std::string config_path;
};

void add_flags(Command& cmd, const std::vector<FlagSpec>& base, const std::vector<FlagSpec>& extra) {
  cmd.app->add_option("--config", cmd.config_path, "JSON file with defaults for any flag");
  for (const auto* list : {&base, &extra}) {
    for (const auto& f : *list) {
      cmd.flags.push_back(f);
      cmd.options[f.key] = cmd.app->add_option(f.flag, cmd.values[f.key], f.help);
    }
  }
}

json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadArguments("--config: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw BadArguments("--config: " + std::string(e.what()));
  }
  if (!j.is_object()) throw BadArguments("--config: top level must be an object");
  // A run report carries its inputs under "config".
  if (j.contains("config") && j["config"].is_object()) return j["config"];
  return j;
}

/// File values first, then every flag the user actually passed.
json merged_settings(const Command& cmd) {
  json j = cmd.config_path.empty() ? json::object() : read_config_file(cmd.config_path);
  for (const auto& f : cmd.flags) {
    if (cmd.options.at(f.key)->count() > 0) j[f.key] = convert(f, cmd.values.at(f.key));
  }
  return j;
}

json take(json& j, const char* key) {
  if (!j.contains(key)) return nullptr;
  json v = j[key];
  j.erase(key);
  return v;
}

BenchConfig base_config(json j) {
  try {
    return qkb::bench::config_from_json(j);
  } catch (const json::exception& e) {
    throw BadArguments(e.what());
  }
}

template <class T>
T get_or(const json& v, T fallback) {
  try {
    return v.is_null() ? fallback : v.get<T>();
  } catch (const json::exception& e) {
    throw BadArguments(e.what());
  }
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw qkb::bench::StageError("write", "cannot open '" + out_path + "' for writing");
  out << text;
  if (!out) throw qkb::bench::StageError("write", "failed writing '" + out_path + "'");
}

int cmd_run(const Command& cmd) {
  json j = merged_settings(cmd);
  const std::string out = get_or<std::string>(take(j, "out"), "");
  BenchConfig cfg = base_config(j);
  cfg.validate();
  const auto report = qkb::bench::run_benchmark(cfg);
  emit(out, qkb::bench::to_json(report).dump(2) + "\n");
  if (!out.empty()) {
    std::cout << cfg.dataset << ' ' << qkb::bench::to_string(cfg.model) << " accuracy "
              << report.metrics.accuracy << " (" << report.prepared.test.size() << " test rows) -> " << out
              << '\n';
  }
  return kOk;
}

int cmd_sweep(const Command& cmd) {
  json j = merged_settings(cmd);
  const std::string out = get_or<std::string>(take(j, "out"), "");
  qkb::bench::SweepConfig sc;
  const double start = get_or(take(j, "p_start"), 0.0);
  const double stop = get_or(take(j, "p_stop"), 0.6);
  const double step = get_or(take(j, "p_step"), 0.1);
  sc.trials = get_or(take(j, "trials"), 20);
  sc.mitigation = qkb::qknn::parse_mitigation(get_or<std::string>(take(j, "mitigate"), "none"));
  sc.noise_kind = qkb::noise::parse_noise_kind(get_or<std::string>(take(j, "noise"), "mixed_pauli"));
  sc.injection = qkb::noise::parse_injection_point(get_or<std::string>(take(j, "injection"), "after-feature-map"));
  sc.code_length = get_or(take(j, "code_length"), 3);
  sc.threads = get_or(take(j, "threads"), 0u);
  if (!j.contains("dataset")) j["dataset"] = "wdbc";
  sc.base = base_config(j);
  sc.p_values = qkb::bench::p_grid(start, stop, step);
  sc.validate();
  const auto raw = qkb::bench::load_named_dataset(sc.base.dataset, sc.base.data_dir);
  const auto result = qkb::bench::run_noise_sweep(raw, sc);
  std::ostringstream csv;
  qkb::bench::write_sweep_csv(result, csv);
  emit(out, csv.str());
  return kOk;
}

int cmd_compare(const Command& cmd) {
  json j = merged_settings(cmd);
  const std::string out = get_or<std::string>(take(j, "out"), "");
  BenchConfig cfg = base_config(j);
  cfg.validate();
  const auto raw = qkb::bench::load_named_dataset(cfg.dataset, cfg.data_dir);
  std::ostringstream csv;
  qkb::bench::write_compare_csv({qkb::bench::compare(raw, cfg)}, csv);
  emit(out, csv.str());
  return kOk;
}

int cmd_select(const Command& cmd) {
  json j = merged_settings(cmd);
  const std::string out = get_or<std::string>(take(j, "out"), "");
  const auto policy = qkb::data::parse_policy(get_or<std::string>(take(j, "policy"), "topk=4"));
  BenchConfig cfg = base_config(j);
  cfg.validate();
  const auto raw = qkb::bench::load_named_dataset(cfg.dataset, cfg.data_dir);
  const auto sel = qkb::data::chi_square_select(raw, cfg.bins, policy);
  json doc = qkb::bench::to_json(sel, raw);
  doc["dataset"] = cfg.dataset;
  doc["bins"] = cfg.bins;
  doc["policy"] = qkb::data::to_string(policy);
  emit(out, doc.dump(2) + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qkb experiment driver"};
  app.require_subcommand(1);

  Command run{app.add_subcommand("run", "one seeded benchmark run")};
  add_flags(run, kBaseFlags, kRunFlags);
  Command sweep{app.add_subcommand("sweep", "QKNN accuracy against noise probability")};
  add_flags(sweep, kBaseFlags, kSweepFlags);
  Command cmp{app.add_subcommand("compare", "QKNN, CKNN and QNN on a shared split")};
  add_flags(cmp, kBaseFlags, kCompareFlags);
  Command select{app.add_subcommand("select", "chi-square feature scores")};
  add_flags(select, kBaseFlags, kSelectFlags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadArguments;
  }

  try {
    if (*run.app) return cmd_run(run);
    if (*sweep.app) return cmd_sweep(sweep);
    if (*cmp.app) return cmd_compare(cmp);
    return cmd_select(select);
  } catch (const BadArguments& e) {
    std::cerr << "bench: " << e.what() << '\n';
    return kBadArguments;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bench: " << e.what() << '\n';
    return kBadArguments;
  } catch (const std::exception& e) {
    std::cerr << "bench: " << e.what() << '\n';
    return kStageError;
  }
}
