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

#include "dense_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qkb::testing {
namespace {

const cd I1{0.0, 1.0};

DenseMatrix m2(cd a, cd b, cd c, cd d) { return {{a, b}, {c, d}}; }

DenseMatrix controlled(const DenseMatrix& u, int controls) {
  const std::size_t dim = u.size() << controls;
  DenseMatrix m = identity(dim);
  const std::size_t off = dim - u.size();
  for (std::size_t r = 0; r < u.size(); ++r) {
    for (std::size_t c = 0; c < u.size(); ++c) m[off + r][off + c] = u[r][c];
  }
  return m;
}

}  // namespace

DenseMatrix identity(std::size_t dim) {
  DenseMatrix m(dim, std::vector<cd>(dim, 0.0));
  for (std::size_t i = 0; i < dim; ++i) m[i][i] = 1.0;
  return m;
}

DenseMatrix local_matrix(const qsim::GateOp& g) {
  using K = qsim::GateKind;
  const double r = 1.0 / std::sqrt(2.0);
  const double c = std::cos(g.angle / 2.0), s = std::sin(g.angle / 2.0);
  const DenseMatrix X = m2(0, 1, 1, 0);
  switch (g.kind) {
    case K::H: return m2(r, r, r, -r);
    case K::X: return X;
    case K::Y: return m2(0, -I1, I1, 0);
    case K::Z: return m2(1, 0, 0, -1);
    case K::S: return m2(1, 0, 0, I1);
    case K::T: return m2(1, 0, 0, std::polar(1.0, std::numbers::pi / 4.0));
    case K::RZ: return m2(std::polar(1.0, -g.angle / 2.0), 0, 0, std::polar(1.0, g.angle / 2.0));
    case K::RY: return m2(c, -s, s, c);
    case K::CNOT: return controlled(X, 1);
    case K::SWAP: return {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
    case K::Toffoli: return controlled(X, 2);
    case K::IsingXY: {
      const double ct = std::cos(g.angle), st = std::sin(g.angle);
      return {{1, 0, 0, 0}, {0, ct, -I1 * st, 0}, {0, -I1 * st, ct, 0}, {0, 0, 0, 1}};
    }
  }
  return {};
}

DenseMatrix embed(const DenseMatrix& local, const std::vector<int>& targets, int n) {
  const std::size_t dim = std::size_t{1} << n;
  const int k = static_cast<int>(targets.size());
  auto local_index = [&](std::size_t basis) {
    std::size_t li = 0;
    for (int j = 0; j < k; ++j) li = (li << 1) | ((basis >> (n - 1 - targets[j])) & 1u);
    return li;
  };
  std::size_t target_mask = 0;
  for (int t : targets) target_mask |= std::size_t{1} << (n - 1 - t);
  DenseMatrix m(dim, std::vector<cd>(dim, 0.0));
  for (std::size_t row = 0; row < dim; ++row) {
    for (std::size_t col = 0; col < dim; ++col) {
      if ((row & ~target_mask) != (col & ~target_mask)) continue;
      m[row][col] = local[local_index(row)][local_index(col)];
    }
  }
  return m;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  const std::size_t n = a.size();
  DenseMatrix m(n, std::vector<cd>(b[0].size(), 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == cd{}) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j) m[i][j] += a[i][k] * b[k][j];
    }
  }
  return m;
}

DenseMatrix adjoint(const DenseMatrix& a) {
  DenseMatrix m(a[0].size(), std::vector<cd>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[0].size(); ++j) m[j][i] = std::conj(a[i][j]);
  }
  return m;
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  const std::size_t ra = a.size(), ca = a[0].size(), rb = b.size(), cb = b[0].size();
  DenseMatrix m(ra * rb, std::vector<cd>(ca * cb));
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t j = 0; j < ca; ++j)
      for (std::size_t k = 0; k < rb; ++k)
        for (std::size_t l = 0; l < cb; ++l) m[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
  return m;
}

std::vector<cd> apply(const DenseMatrix& m, const std::vector<cd>& v) {
  std::vector<cd> out(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  }
  return out;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
  }
  return d;
}

DenseMatrix circuit_matrix(const std::vector<qsim::GateOp>& ops, int n) {
  DenseMatrix m = identity(std::size_t{1} << n);
  for (const auto& g : ops) m = multiply(embed(local_matrix(g), g.targets, n), m);
  return m;
}

qsim::GateOp random_gate(int n, Rng& rng) {
  std::vector<qsim::GateKind> kinds;
  for (auto k : qsim::kAllGateKinds) {
    if (qsim::arity(k) <= n) kinds.push_back(k);
  }
  const auto kind = kinds[uniform_index(rng, kinds.size())];
  std::vector<int> qubits(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) qubits[i] = i;
  shuffle(qubits.begin(), qubits.end(), rng);
  qubits.resize(static_cast<std::size_t>(qsim::arity(kind)));
  const double angle = qsim::is_parametric(kind) ? (4.0 * uniform01(rng) - 2.0) * std::numbers::pi : 0.0;
  return {kind, qubits, angle};
}

}  // namespace qkb::testing
