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
#include "qkb/qnn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qkb/common.hpp"
#include "qkb/encoding.hpp"
#include "qkb/rng.hpp"

namespace qkb::qnn {
namespace {

constexpr double kShift = std::numbers::pi / 2.0;

void check_batch(const QnnArchitecture& arch, const data::Matrix& x, std::span<const int> labels) {
  if (x.rows() != labels.size()) throw std::invalid_argument("QNN batch rows/labels mismatch");
  if (x.rows() == 0) throw std::invalid_argument("QNN batch is empty");
  if (static_cast<int>(x.cols()) != arch.n_qubits) {
    throw std::invalid_argument("QNN batch has " + std::to_string(x.cols()) + " features, circuit has " +
                                std::to_string(arch.n_qubits) + " qubits");
  }
  for (int y : labels) {
    if (y < 0 || y >= arch.n_classes) throw std::invalid_argument("label outside [0, n_classes)");
  }
}

// d loss / d z for one instance.
std::vector<double> loss_grad_wrt_outputs(const QnnArchitecture& arch, std::span<const double> z, int y) {
  std::vector<double> g(z.size(), 0.0);
  if (arch.n_classes == 2) {
    const double p = std::clamp((1.0 + z[0]) / 2.0, kProbabilityClamp, 1.0 - kProbabilityClamp);
    const double dl_dp = -(y / p) + (1 - y) / (1.0 - p);
    g[0] = 0.5 * dl_dp;
    return g;
  }
  const auto s = softmax(z);
  for (std::size_t c = 0; c < z.size(); ++c) g[c] = s[c] - (static_cast<int>(c) == y ? 1.0 : 0.0);
  return g;
}

double instance_loss(const QnnArchitecture& arch, std::span<const double> z, int y) {
  if (arch.n_classes == 2) {
    const double p = std::clamp((1.0 + z[0]) / 2.0, kProbabilityClamp, 1.0 - kProbabilityClamp);
    return -(y * std::log(p) + (1 - y) * std::log(1.0 - p));
  }
  const auto s = softmax(z);
  return -std::log(std::max(s[static_cast<std::size_t>(y)], kProbabilityClamp));
}

}  // namespace

std::string_view to_string(LayerKind kind) {
  switch (kind) {
    case LayerKind::StronglyEntangling: return "strongly-entangling";
    case LayerKind::RzRing: return "rz-ring";
    case LayerKind::RzChain: return "rz-chain";
  }
  return "?";
}

LayerKind parse_layer_kind(std::string_view text) {
  for (auto k : {LayerKind::StronglyEntangling, LayerKind::RzRing, LayerKind::RzChain}) {
    if (text == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown QNN layer kind '" + std::string(text) + "'");
}

std::size_t QnnArchitecture::param_count() const {
  return static_cast<std::size_t>(n_layers) * static_cast<std::size_t>(n_qubits) *
         static_cast<std::size_t>(params_per_qubit());
}

void QnnArchitecture::validate() const {
  if (n_qubits < 1) throw std::invalid_argument("QNN needs at least one qubit");
  if (n_layers < 1) throw std::invalid_argument("QNN needs at least one layer");
  if (n_classes < 2) throw std::invalid_argument("QNN needs at least two classes");
  if (n_classes > n_qubits) {
    throw std::invalid_argument("QNN reads one qubit per class: n_classes (" + std::to_string(n_classes) +
                                ") exceeds n_qubits (" + std::to_string(n_qubits) + ")");
  }
  if (params.size() != param_count()) {
    throw std::invalid_argument("QNN parameter array has " + std::to_string(params.size()) +
                                " entries, expected " + std::to_string(param_count()));
  }
  for (double p : params) {
    if (!std::isfinite(p)) throw std::invalid_argument("QNN parameters must be finite");
  }
}

QnnArchitecture QnnArchitecture::initialize(int n_qubits, int n_layers, int n_classes, LayerKind layer,
                                            double init_scale, std::uint64_t seed) {
  QnnArchitecture a{n_qubits, n_layers, n_classes, layer, {}};
  a.params.resize(std::max<std::size_t>(a.param_count(), 0));
  Rng rng = make_rng(seed);
  for (auto& p : a.params) p = init_scale * (2.0 * uniform01(rng) - 1.0);
  a.validate();
  return a;
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning rate must be positive");
  if (epochs < 0) throw std::invalid_argument("epochs must be non-negative");
  if (!(init_scale >= 0.0)) throw std::invalid_argument("init scale must be non-negative");
}

std::vector<qsim::GateOp> circuit(const QnnArchitecture& arch, std::span<const double> x) {
  arch.validate();
  if (static_cast<int>(x.size()) != arch.n_qubits) {
    throw std::invalid_argument("QNN input has " + std::to_string(x.size()) + " features, expected " +
                                std::to_string(arch.n_qubits));
  }
  using namespace qsim::gates;
  const int n = arch.n_qubits;
  const int ppq = arch.params_per_qubit();
  std::vector<qsim::GateOp> ops;
  for (int q = 0; q < n; ++q) ops.push_back(ry(q, x[q]));
  for (int l = 0; l < arch.n_layers; ++l) {
    for (int q = 0; q < n; ++q) {
      const double* th = &arch.params[(static_cast<std::size_t>(l) * n + q) * ppq];
      if (arch.layer == LayerKind::StronglyEntangling) {
        ops.push_back(rz(q, th[0]));
        ops.push_back(ry(q, th[1]));
        ops.push_back(rz(q, th[2]));
      } else {
        ops.push_back(rz(q, th[0]));
      }
    }
    for (int q = 0; q + 1 < n; ++q) ops.push_back(cnot(q, q + 1));
    if (arch.layer != LayerKind::RzChain && n > 2) ops.push_back(cnot(n - 1, 0));
    if (arch.layer != LayerKind::RzChain && n == 2) ops.push_back(cnot(1, 0));
  }
  return ops;
}

std::vector<double> forward(const QnnArchitecture& arch, std::span<const double> x) {
  const auto ops = circuit(arch, x);
  const auto state = qsim::apply_circuit(qsim::new_zero_state(arch.n_qubits), ops);
  std::vector<double> z(static_cast<std::size_t>(arch.n_classes));
  for (int c = 0; c < arch.n_classes; ++c) z[c] = qsim::z_expectation(state, c);
  return z;
}

std::vector<double> output_probabilities(const QnnArchitecture& arch, std::span<const double> z) {
  if (arch.n_classes == 2) {
    const double p1 = std::clamp((1.0 + z[0]) / 2.0, 0.0, 1.0);
    return {1.0 - p1, p1};
  }
  return softmax(z);
}

std::vector<double> softmax(std::span<const double> z) {
  if (z.empty()) return {};
  const double m = *std::max_element(z.begin(), z.end());
  std::vector<double> out(z.size());
  double total = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) total += out[i] = std::exp(z[i] - m);
  for (auto& v : out) v /= total;
  return out;
}

double bce_loss(std::span<const int> y, std::span<const double> y_hat) {
  if (y.size() != y_hat.size()) throw std::invalid_argument("bce_loss: length mismatch");
  if (y.empty()) throw std::invalid_argument("bce_loss: empty input");
  double acc = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double p = std::clamp(y_hat[i], kProbabilityClamp, 1.0 - kProbabilityClamp);
    acc -= y[i] * std::log(p) + (1 - y[i]) * std::log(1.0 - p);
  }
  return acc / static_cast<double>(y.size());
}

double cce_loss(std::span<const std::vector<double>> y, std::span<const std::vector<double>> y_hat) {
  if (y.size() != y_hat.size()) throw std::invalid_argument("cce_loss: row count mismatch");
  if (y.empty()) throw std::invalid_argument("cce_loss: empty input");
  double acc = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i].size() != y_hat[i].size()) throw std::invalid_argument("cce_loss: column count mismatch");
    for (std::size_t j = 0; j < y[i].size(); ++j) {
      if (y[i][j] != 0.0) acc -= y[i][j] * std::log(std::max(y_hat[i][j], kProbabilityClamp));
    }
  }
  return acc / static_cast<double>(y.size());
}

double loss(const QnnArchitecture& arch, const data::Matrix& x, std::span<const int> labels) {
  check_batch(arch, x, labels);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) acc += instance_loss(arch, forward(arch, x.row(i)), labels[i]);
  return acc / static_cast<double>(x.rows());
}

std::vector<double> gradient(const QnnArchitecture& arch, const data::Matrix& x, std::span<const int> labels) {
  check_batch(arch, x, labels);
  std::vector<double> grad(arch.param_count(), 0.0);
  QnnArchitecture shifted = arch;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto row = x.row(i);
    const auto dl_dz = loss_grad_wrt_outputs(arch, forward(arch, row), labels[i]);
    for (std::size_t j = 0; j < grad.size(); ++j) {
      const double theta = arch.params[j];
      shifted.params[j] = theta + kShift;
      const auto zp = forward(shifted, row);
      shifted.params[j] = theta - kShift;
      const auto zm = forward(shifted, row);
      shifted.params[j] = theta;
      double g = 0.0;
      for (std::size_t c = 0; c < dl_dz.size(); ++c) g += dl_dz[c] * 0.5 * (zp[c] - zm[c]);
      grad[j] += g;
    }
  }
  for (auto& g : grad) g /= static_cast<double>(x.rows());
  return grad;
}

TrainResult train(QnnArchitecture arch, const data::Matrix& x, std::span<const int> labels,
                  const TrainConfig& cfg) {
  cfg.validate();
  check_batch(arch, x, labels);
  TrainResult res{std::move(arch), {}};
  auto record = [&](int epoch) {
    const bool finite_params = std::all_of(res.arch.params.begin(), res.arch.params.end(),
                                           [](double p) { return std::isfinite(p); });
    const double l = finite_params ? loss(res.arch, x, labels) : std::nan("");
    if (!std::isfinite(l)) {
      throw TrainingError("QNN loss became non-finite at epoch " + std::to_string(epoch) +
                          " (learning rate " + std::to_string(cfg.learning_rate) + ")");
    }
    res.loss_history.push_back(l);
  };
  record(0);
  for (int e = 0; e < cfg.epochs; ++e) {
    const auto g = gradient(res.arch, x, labels);
    for (std::size_t j = 0; j < g.size(); ++j) res.arch.params[j] -= cfg.learning_rate * g[j];
    record(e + 1);
  }
  return res;
}

Prediction classify(const QnnArchitecture& arch, std::span<const double> x) {
  auto probs = output_probabilities(arch, forward(arch, x));
  const auto best = std::max_element(probs.begin(), probs.end()) - probs.begin();
  return {static_cast<int>(best), std::move(probs)};
}

PredictionSet predict(const QnnArchitecture& arch, const data::Matrix& x) {
  PredictionSet out;
  for (std::size_t r = 0; r < x.rows(); ++r) out.push_back(classify(arch, x.row(r)));
  return out;
}

nlohmann::json to_json(const QnnArchitecture& arch, const TrainConfig& cfg) {
  return {
      {"n_qubits", arch.n_qubits},
      {"n_layers", arch.n_layers},
      {"n_classes", arch.n_classes},
      {"layer", std::string(to_string(arch.layer))},
      {"shape", {arch.n_layers, arch.n_qubits, arch.params_per_qubit()}},
      {"params", arch.params},
      {"train", {{"learning_rate", cfg.learning_rate},
                 {"epochs", cfg.epochs},
                 {"seed", cfg.seed},
                 {"init_scale", cfg.init_scale}}},
  };
}

QnnArchitecture architecture_from_json(const nlohmann::json& j) {
  QnnArchitecture a;
  a.n_qubits = j.at("n_qubits").get<int>();
  a.n_layers = j.at("n_layers").get<int>();
  a.n_classes = j.at("n_classes").get<int>();
  a.layer = parse_layer_kind(j.at("layer").get<std::string>());
  a.params = j.at("params").get<std::vector<double>>();
  a.validate();
  return a;
}

}  // namespace qkb::qnn
