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
#include "qkb/qknn.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qkb/common.hpp"

namespace qkb::qknn {
namespace {

double sampled_p0(const qsim::StateVector& a, const qsim::StateVector& b, std::uint64_t shots,
                  std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("sampled swap test needs shots >= 1");
  // Only the ancilla is measured, so each shot is a Bernoulli draw from its
  // marginal; the data register is discarded.
  const double p0 = swap_test_p0(a, b);
  Rng rng = make_rng(seed);
  std::uint64_t zeros = 0;
  for (std::uint64_t s = 0; s < shots; ++s) zeros += uniform01(rng) < p0 ? 1 : 0;
  return static_cast<double>(zeros) / static_cast<double>(shots);
}

double pair_fidelity(const qsim::StateVector& a, const qsim::StateVector& b, const DistanceMode& mode,
                     std::uint64_t seed) {
  if (mode.kind == DistanceKind::Exact) return std::clamp(qsim::fidelity(a, b), 0.0, 1.0);
  const double d = std::clamp(sampled_p0(a, b, mode.shots, seed), 0.5, 1.0);
  return 2.0 * d - 1.0;
}

struct Encoded {
  qsim::StateVector raw;     // after encoding only
  qsim::StateVector mapped;  // after the feature map (== raw when disabled)
};

Encoded encode_both(std::span<const double> x, const QknnOptions& o) {
  auto p = encoding::encode_point(x, o.encoding);
  Encoded e{p.state, p.state};
  if (o.use_feature_map) e.mapped = encoding::apply_feature_map(std::move(p), o.encoding).state;
  return e;
}

// One logical Pauli per data qubit. Under the physical code each data qubit
// is spread over code_length physical qubits: bit-flip components are decoded
// by syndrome correction, phase components compose to a logical Z when an
// odd number of physical qubits carry one.
void corrupt(qsim::StateVector& s, const NoiseOptions& nz, Rng& rng) {
  const int n = s.num_qubits();
  if (nz.mitigation != Mitigation::PhysicalCode) {
    for (int q = 0; q < n; ++q) {
      const auto p = noise::sample_pauli(nz.spec, rng);
      if (p != noise::Pauli::I) s.apply(noise::pauli_gate(p, q));
    }
    return;
  }
  const qec::RepetitionCode code(nz.code_length);
  std::vector<int> xflips(static_cast<std::size_t>(code.n()));
  for (int q = 0; q < n; ++q) {
    int zparity = 0;
    bool any_x = false;
    for (int j = 0; j < code.n(); ++j) {
      const auto p = noise::sample_pauli(nz.spec, rng);
      xflips[j] = (p == noise::Pauli::X || p == noise::Pauli::Y) ? 1 : 0;
      any_x = any_x || xflips[j] != 0;
      zparity ^= (p == noise::Pauli::Z || p == noise::Pauli::Y) ? 1 : 0;
    }
    if (any_x && qec::protect_bit(0, xflips, code) == 1) s.apply(qsim::gates::x(q));
    if (zparity) s.apply(qsim::gates::z(q));
  }
}

qsim::StateVector noisy_state(const Encoded& e, const QknnOptions& o, const NoiseOptions& nz, Rng& rng) {
  using noise::InjectionPoint;
  switch (nz.injection) {
    case InjectionPoint::AfterFeatureMap: {
      auto s = e.mapped;
      corrupt(s, nz, rng);
      return s;
    }
    case InjectionPoint::AfterEncoding:
    case InjectionPoint::Both: {
      auto s = e.raw;
      corrupt(s, nz, rng);
      if (o.use_feature_map) {
        for (const auto& g : encoding::feature_map_circuit(s.num_qubits(), o.encoding)) s.apply(g);
      }
      if (nz.injection == InjectionPoint::Both) corrupt(s, nz, rng);
      return s;
    }
  }
  throw std::logic_error("unknown injection point");
}

Prediction combine_runs(const std::vector<Prediction>& runs, std::size_t num_classes) {
  if (runs.size() == 1) return runs.front();
  Prediction out{0, std::vector<double>(num_classes, 0.0)};
  for (const auto& r : runs) {
    for (std::size_t c = 0; c < num_classes; ++c) out.scores[c] += r.scores[c] / runs.size();
  }
  if (num_classes == 2) {
    std::vector<int> bits;
    for (const auto& r : runs) bits.push_back(r.label);
    out.label = qec::majority_decode(bits);
    return out;
  }
  std::vector<int> count(num_classes, 0);
  for (const auto& r : runs) ++count[r.label];
  int best = 0;
  for (int c = 1; c < static_cast<int>(num_classes); ++c) {
    if (count[c] > count[best] || (count[c] == count[best] && out.scores[c] > out.scores[best])) best = c;
  }
  out.label = best;
  return out;
}

}  // namespace

std::string_view to_string(DistanceKind kind) {
  return kind == DistanceKind::Exact ? "exact" : "sampled";
}

DistanceKind parse_distance_kind(std::string_view text) {
  if (text == "exact") return DistanceKind::Exact;
  if (text == "sampled") return DistanceKind::Sampled;
  throw std::invalid_argument("unknown distance mode '" + std::string(text) + "'");
}

std::string_view to_string(Mitigation m) {
  switch (m) {
    case Mitigation::None: return "none";
    case Mitigation::RepeatVote: return "repeat-vote";
    case Mitigation::PhysicalCode: return "physical-code";
  }
  return "?";
}

Mitigation parse_mitigation(std::string_view text) {
  for (auto m : {Mitigation::None, Mitigation::RepeatVote, Mitigation::PhysicalCode}) {
    if (text == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown mitigation mode '" + std::string(text) + "'");
}

std::vector<qsim::GateOp> swap_test_circuit(int d) {
  if (d < 1) throw std::invalid_argument("swap test needs at least one data qubit per register");
  using namespace qsim::gates;
  std::vector<qsim::GateOp> ops;
  ops.push_back(h(0));
  for (int i = 0; i < d; ++i) {
    const int a = 1 + i;
    const int b = 1 + d + i;
    ops.push_back(cnot(b, a));
    ops.push_back(toffoli(0, a, b));
    ops.push_back(cnot(b, a));
  }
  ops.push_back(h(0));
  return ops;
}

double swap_test_p0(const qsim::StateVector& a, const qsim::StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("swap test registers differ in size");
  }
  auto joint = qsim::tensor_product(qsim::new_zero_state(1), qsim::tensor_product(a, b));
  for (const auto& g : swap_test_circuit(a.num_qubits())) joint.apply(g);
  return qsim::probability_zero(joint, 0);
}

double quantum_distance(const encoding::EncodedPoint& a, const encoding::EncodedPoint& b,
                        const DistanceMode& mode, std::uint64_t seed) {
  if (a.state.num_qubits() != b.state.num_qubits()) {
    throw std::invalid_argument("quantum_distance: qubit counts differ (" +
                                std::to_string(a.state.num_qubits()) + " vs " +
                                std::to_string(b.state.num_qubits()) + ")");
  }
  if (mode.kind == DistanceKind::Exact) return 0.5 * (1.0 + qsim::fidelity(a.state, b.state));
  return sampled_p0(a.state, b.state, mode.shots, seed);
}

NeighborSet rank_neighbors(std::span<const double> fidelities, std::size_t k) {
  if (fidelities.empty()) throw std::invalid_argument("no candidates to rank");
  k = std::min(k, fidelities.size());
  std::vector<std::size_t> order(fidelities.size());
  std::iota(order.begin(), order.end(), 0);
  const auto mid = order.begin() + static_cast<std::ptrdiff_t>(k);
  std::partial_sort(order.begin(), mid, order.end(), [&](std::size_t a, std::size_t b) {
    return fidelities[a] > fidelities[b] || (fidelities[a] == fidelities[b] && a < b);
  });
  NeighborSet ns;
  for (auto it = order.begin(); it != mid; ++it) {
    const double f = std::clamp(fidelities[*it], 0.0, 1.0);
    ns.indices.push_back(*it);
    ns.fidelities.push_back(f);
    ns.distances.push_back(0.5 * (1.0 + f));
  }
  return ns;
}

Prediction vote(const NeighborSet& neighbors, std::span<const int> labels, std::size_t num_classes) {
  std::vector<int> count(num_classes, 0);
  std::vector<double> weight(num_classes, 0.0);
  for (std::size_t j = 0; j < neighbors.indices.size(); ++j) {
    const int y = labels[neighbors.indices[j]];
    ++count[y];
    weight[y] += neighbors.fidelities[j];
  }
  int best = 0;
  for (int c = 1; c < static_cast<int>(num_classes); ++c) {
    if (count[c] > count[best] || (count[c] == count[best] && weight[c] > weight[best])) best = c;
  }
  Prediction p{best, std::vector<double>(num_classes, 0.0)};
  const double total = std::accumulate(weight.begin(), weight.end(), 0.0);
  for (std::size_t c = 0; c < num_classes; ++c) {
    p.scores[c] = total > 0.0 ? weight[c] / total
                              : static_cast<double>(count[c]) / neighbors.indices.size();
  }
  return p;
}

QknnModel QknnModel::fit(const data::Dataset& train, const QknnOptions& options) {
  options.encoding.validate();
  if (train.size() == 0) throw std::invalid_argument("QKNN needs a non-empty training set");
  if (options.k < 1 || options.k > train.size()) {
    throw std::invalid_argument("k must lie in [1, " + std::to_string(train.size()) + "]");
  }
  if (options.mode.kind == DistanceKind::Sampled && options.mode.shots == 0) {
    throw std::invalid_argument("sampled distance mode needs shots >= 1");
  }
  QknnModel m;
  m.options_ = options;
  m.labels_ = train.labels;
  m.num_classes_ = train.num_classes();
  m.encoded_train_.reserve(train.size());
  for (std::size_t r = 0; r < train.size(); ++r) m.encoded_train_.push_back(m.encode(train.features.row(r), r));
  return m;
}

encoding::EncodedPoint QknnModel::encode(std::span<const double> x, std::size_t source_row) const {
  auto p = encoding::encode_point(x, options_.encoding, source_row);
  if (options_.use_feature_map) p = encoding::apply_feature_map(std::move(p), options_.encoding);
  return p;
}

NeighborSet QknnModel::find_neighbors(const encoding::EncodedPoint& test, std::uint64_t seed) const {
  std::vector<double> fid(encoded_train_.size());
  for (std::size_t i = 0; i < fid.size(); ++i) {
    if (encoded_train_[i].state.num_qubits() != test.state.num_qubits()) {
      throw std::invalid_argument("test point has a different qubit count than the model");
    }
    fid[i] = pair_fidelity(encoded_train_[i].state, test.state, options_.mode, derive_seed(seed, i));
  }
  return rank_neighbors(fid, options_.k);
}

Prediction QknnModel::classify(const encoding::EncodedPoint& test, std::uint64_t seed) const {
  return vote(find_neighbors(test, seed), labels_, num_classes_);
}

PredictionSet fit_predict(const data::Dataset& train, const data::Dataset& test,
                          const QknnOptions& options, const std::optional<NoiseOptions>& noise) {
  if (train.size() == 0) throw std::invalid_argument("QKNN needs a non-empty training set");
  if (train.num_features() != test.num_features() || train.num_classes() != test.num_classes()) {
    throw DataError("train/test schema mismatch");
  }
  PredictionSet out;
  if (!noise) {
    const auto model = QknnModel::fit(train, options);
    for (std::size_t t = 0; t < test.size(); ++t) {
      out.push_back(model.classify(model.encode(test.features.row(t), t), derive_seed(options.seed, t)));
    }
    return out;
  }

  noise->spec.validate();
  if (options.k < 1 || options.k > train.size()) throw std::invalid_argument("k out of range");
  if (noise->mitigation != Mitigation::None) (void)qec::RepetitionCode(noise->code_length);
  const int runs = noise->mitigation == Mitigation::RepeatVote ? qec::RepetitionCode(noise->code_length).n() : 1;

  std::vector<Encoded> tr;
  tr.reserve(train.size());
  for (std::size_t r = 0; r < train.size(); ++r) tr.push_back(encode_both(train.features.row(r), options));

  std::vector<double> fid(train.size());
  for (std::size_t t = 0; t < test.size(); ++t) {
    const Encoded te = encode_both(test.features.row(t), options);
    std::vector<Prediction> preds;
    for (int run = 0; run < runs; ++run) {
      for (std::size_t i = 0; i < train.size(); ++i) {
        // Each comparison is its own circuit execution with fresh noise on
        // both registers.
        const std::uint64_t s = derive_seed(derive_seed(noise->seed, t), i, static_cast<std::uint64_t>(run));
        Rng rng = make_rng(s);
        const auto a = noisy_state(tr[i], options, *noise, rng);
        const auto b = noisy_state(te, options, *noise, rng);
        fid[i] = pair_fidelity(a, b, options.mode, derive_seed(s, 0x5a17ULL));
      }
      preds.push_back(vote(rank_neighbors(fid, options.k), train.labels, train.num_classes()));
    }
    out.push_back(combine_runs(preds, train.num_classes()));
  }
  return out;
}

}  // namespace qkb::qknn
