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
#pragma once

// Chi-square feature selection against class labels.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qkb/datapipe.hpp"

namespace qkb::stats {

/// Q(a, x) = Γ(a, x) / Γ(a).
double regularized_gamma_q(double a, double x);
/// Survival function of the chi-square distribution.
double chi2_sf(double x, double dof);
/// x such that chi2_sf(x, dof) == alpha.
double chi2_critical(double alpha, double dof);

}  // namespace qkb::stats

namespace qkb::data {

struct PValueThreshold {
  double alpha = 0.05;
};
struct TopK {
  std::size_t k = 4;
};
using SelectionPolicy = std::variant<PValueThreshold, TopK>;

/// Accepts "alpha=F" or "topk=K".
SelectionPolicy parse_policy(std::string_view text);
std::string to_string(const SelectionPolicy& policy);

/// Observed counts, rows = bins, columns = classes.
using ContingencyTable = std::vector<std::vector<double>>;

/// Equal-width bins over the observed range of `values`; the maximum
/// falls in the last bin.
ContingencyTable contingency_table(std::span<const double> values, std::span<const int> labels,
                                   int bins, std::size_t num_classes);

struct Chi2Statistic {
  double chi2 = 0.0;
  double p_value = 1.0;
  int dof = 0;
  int dropped_bins = 0;  // empty bins merged away (their expected counts are 0)
};

Chi2Statistic chi_square(const ContingencyTable& table);

struct SelectionResult {
  std::vector<std::size_t> kept_indices;  // by descending chi2 score
  std::vector<double> chi2_scores;        // per source feature
  std::vector<double> p_values;           // per source feature
  std::vector<int> degrees_of_freedom;    // per source feature
  std::vector<std::string> notes;
};

SelectionResult chi_square_select(const Dataset& d, int bins, const SelectionPolicy& policy);

}  // namespace qkb::data
