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
#include "qkb/chi2.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qkb::stats {
namespace {

constexpr int kMaxIterations = 500;
constexpr double kEps = 1e-15;

// Series for P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double sum = 1.0 / a;
  double term = sum;
  double ap = a;
  for (int n = 0; n < kMaxIterations; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a, x), valid for x >= a + 1.
double gamma_q_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("regularized_gamma_q: need a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_fraction(a, x);
}

double chi2_sf(double x, double dof) {
  if (!(dof > 0.0)) throw std::invalid_argument("chi2_sf: degrees of freedom must be positive");
  if (x <= 0.0) return 1.0;
  return std::clamp(regularized_gamma_q(dof / 2.0, x / 2.0), 0.0, 1.0);
}

double chi2_critical(double alpha, double dof) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("chi2_critical: alpha in (0, 1)");
  double lo = 0.0;
  double hi = std::max(1.0, dof);
  while (chi2_sf(hi, dof) > alpha) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (chi2_sf(mid, dof) > alpha ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace qkb::stats

namespace qkb::data {

SelectionPolicy parse_policy(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) {
    throw std::invalid_argument("policy must be alpha=F or topk=K, got '" + std::string(text) + "'");
  }
  const auto key = text.substr(0, eq);
  const auto val = std::string(text.substr(eq + 1));
  try {
    std::size_t used = 0;
    if (key == "alpha") {
      const double a = std::stod(val, &used);
      if (used != val.size() || !(a > 0.0 && a < 1.0)) throw std::invalid_argument("alpha");
      return PValueThreshold{a};
    }
    if (key == "topk") {
      const long k = std::stol(val, &used);
      if (used != val.size() || k < 1) throw std::invalid_argument("topk");
      return TopK{static_cast<std::size_t>(k)};
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid policy value in '" + std::string(text) + "'");
  }
  throw std::invalid_argument("unknown policy '" + std::string(key) + "'");
}

std::string to_string(const SelectionPolicy& policy) {
  if (const auto* p = std::get_if<PValueThreshold>(&policy)) {
    std::ostringstream out;
    out << "alpha=" << std::setprecision(10) << p->alpha;
    return out.str();
  }
  return "topk=" + std::to_string(std::get<TopK>(policy).k);
}

ContingencyTable contingency_table(std::span<const double> values, std::span<const int> labels,
                                   int bins, std::size_t num_classes) {
  if (bins < 2) throw std::invalid_argument("chi-square discretization needs at least 2 bins");
  if (values.size() != labels.size()) throw std::invalid_argument("values/labels length mismatch");
  ContingencyTable table(static_cast<std::size_t>(bins), std::vector<double>(num_classes, 0.0));
  if (values.empty()) return table;
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double width = (*hi_it - lo) / bins;
  for (std::size_t i = 0; i < values.size(); ++i) {
    int b = width > 0.0 ? static_cast<int>(std::floor((values[i] - lo) / width)) : 0;
    b = std::clamp(b, 0, bins - 1);
    if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= num_classes) {
      throw std::invalid_argument("label out of range");
    }
    table[static_cast<std::size_t>(b)][static_cast<std::size_t>(labels[i])] += 1.0;
  }
  return table;
}

Chi2Statistic chi_square(const ContingencyTable& table) {
  Chi2Statistic out;
  if (table.empty()) return out;
  const std::size_t n_cols = table.front().size();
  // Bins with no observations have zero expected counts in every cell;
  // merging them into a neighbour leaves the neighbour's counts unchanged.
  std::vector<double> row_tot;
  std::vector<const std::vector<double>*> rows;
  for (const auto& r : table) {
    const double t = std::accumulate(r.begin(), r.end(), 0.0);
    if (t > 0.0) {
      rows.push_back(&r);
      row_tot.push_back(t);
    } else {
      ++out.dropped_bins;
    }
  }
  std::vector<double> col_tot(n_cols, 0.0);
  for (const auto* r : rows) {
    for (std::size_t c = 0; c < n_cols; ++c) col_tot[c] += (*r)[c];
  }
  const double grand = std::accumulate(row_tot.begin(), row_tot.end(), 0.0);
  const auto live_cols = std::count_if(col_tot.begin(), col_tot.end(), [](double v) { return v > 0.0; });
  if (rows.size() < 2 || live_cols < 2) return out;
  double chi2 = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < n_cols; ++c) {
      if (col_tot[c] == 0.0) continue;
      const double expected = row_tot[i] * col_tot[c] / grand;
      const double diff = (*rows[i])[c] - expected;
      chi2 += diff * diff / expected;
    }
  }
  out.chi2 = chi2;
  out.dof = static_cast<int>((rows.size() - 1) * static_cast<std::size_t>(live_cols - 1));
  out.p_value = stats::chi2_sf(chi2, out.dof);
  return out;
}

SelectionResult chi_square_select(const Dataset& d, int bins, const SelectionPolicy& policy) {
  if (d.size() == 0) throw std::invalid_argument("chi-square selection on an empty dataset");
  SelectionResult res;
  const std::size_t nf = d.num_features();
  for (std::size_t f = 0; f < nf; ++f) {
    const auto col = d.features.column(f);
    const auto stat = chi_square(contingency_table(col, d.labels, bins, d.num_classes()));
    res.chi2_scores.push_back(stat.chi2);
    res.p_values.push_back(stat.p_value);
    res.degrees_of_freedom.push_back(stat.dof);
    if (stat.dropped_bins > 0) {
      const std::string fname = f < d.feature_names.size() ? d.feature_names[f] : std::to_string(f);
      res.notes.push_back("feature '" + fname + "': merged " + std::to_string(stat.dropped_bins) +
                          " empty bin(s)");
    }
  }
  std::vector<std::size_t> order(nf);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return res.chi2_scores[a] > res.chi2_scores[b];
  });
  if (const auto* p = std::get_if<PValueThreshold>(&policy)) {
    for (auto f : order) {
      if (res.p_values[f] < p->alpha) res.kept_indices.push_back(f);
    }
  } else {
    const auto k = std::min(std::get<TopK>(policy).k, nf);
    res.kept_indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return res;
}

}  // namespace qkb::data
