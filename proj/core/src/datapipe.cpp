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
#include "qkb/datapipe.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "qkb/common.hpp"
#include "qkb/rng.hpp"

namespace qkb::data {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw DataError("line " + std::to_string(line_no) + ": " + what);
}

double parse_real(std::string_view field, std::size_t line_no) {
  double v = 0.0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    fail(line_no, "cannot parse '" + std::string(field) + "' as a real number");
  }
  return v;
}

const std::vector<std::string>& wdbc_feature_names() {
  static const std::vector<std::string> names = [] {
    const char* base[] = {"radius",    "texture",     "perimeter",      "area",
                          "smoothness", "compactness", "concavity",      "concave_points",
                          "symmetry",  "fractal_dimension"};
    std::vector<std::string> out;
    for (const char* suffix : {"mean", "se", "worst"}) {
      for (const char* b : base) out.push_back(std::string(b) + "_" + suffix);
    }
    return out;
  }();
  return names;
}

struct FormatInfo {
  std::size_t columns;
  std::vector<std::string> feature_names;
  std::vector<std::string> class_names;
  std::vector<std::string> class_tokens;  // text in the file for each class
};

FormatInfo info_for(DatasetFormat format) {
  switch (format) {
    case DatasetFormat::Wdbc:
      return {32, wdbc_feature_names(), {"benign", "malignant"}, {"B", "M"}};
    case DatasetFormat::Iris:
      return {5,
              {"sepal_length", "sepal_width", "petal_length", "petal_width"},
              {"Iris-setosa", "Iris-versicolor", "Iris-virginica"},
              {"Iris-setosa", "Iris-versicolor", "Iris-virginica"}};
    case DatasetFormat::Banknote:
      return {5, {"variance", "skewness", "curtosis", "entropy"}, {"0", "1"}, {"0", "1"}};
  }
  throw std::logic_error("unknown dataset format");
}

}  // namespace

std::vector<double> Matrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void Matrix::append_row(std::span<const double> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) {
    throw DataError("row has " + std::to_string(values.size()) + " values, expected " +
                    std::to_string(cols_));
  }
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

void Dataset::validate() const {
  if (features.rows() != labels.size()) {
    throw DataError(name + ": " + std::to_string(features.rows()) + " feature rows but " +
                    std::to_string(labels.size()) + " labels");
  }
  if (!feature_names.empty() && feature_names.size() != features.cols()) {
    throw DataError(name + ": feature name count does not match column count");
  }
  for (int y : labels) {
    if (y < 0 || static_cast<std::size_t>(y) >= class_names.size()) {
      throw DataError(name + ": label " + std::to_string(y) + " outside [0, " +
                      std::to_string(class_names.size()) + ")");
    }
  }
  for (std::size_t r = 0; r < features.rows(); ++r) {
    for (double v : features.row(r)) {
      if (!std::isfinite(v)) throw DataError(name + ": non-finite value in row " + std::to_string(r));
    }
  }
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  Dataset out{name, Matrix(0, 0), {}, feature_names, class_names};
  out.features = Matrix(rows.size(), features.cols());
  out.labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto src = features.row(rows[i]);
    std::copy(src.begin(), src.end(), out.features.row(i).begin());
    out.labels.push_back(labels.at(rows[i]));
  }
  return out;
}

Dataset Dataset::select_features(std::span<const std::size_t> columns) const {
  Dataset out{name, Matrix(features.rows(), columns.size()), labels, {}, class_names};
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] >= features.cols()) throw DataError("feature index out of range");
    if (!feature_names.empty()) out.feature_names.push_back(feature_names[columns[c]]);
    for (std::size_t r = 0; r < features.rows(); ++r) out.features(r, c) = features(r, columns[c]);
  }
  return out;
}

std::string_view to_string(DatasetFormat format) {
  switch (format) {
    case DatasetFormat::Wdbc: return "wdbc";
    case DatasetFormat::Iris: return "iris";
    case DatasetFormat::Banknote: return "banknote";
  }
  return "?";
}

DatasetFormat parse_format(std::string_view text) {
  for (auto f : {DatasetFormat::Wdbc, DatasetFormat::Iris, DatasetFormat::Banknote}) {
    if (text == to_string(f)) return f;
  }
  throw std::invalid_argument("unknown dataset '" + std::string(text) +
                              "' (expected wdbc, iris or banknote)");
}

std::string_view default_file_name(DatasetFormat format) {
  switch (format) {
    case DatasetFormat::Wdbc: return "wdbc.data";
    case DatasetFormat::Iris: return "iris.data";
    case DatasetFormat::Banknote: return "data_banknote_authentication.txt";
  }
  return "";
}

Dataset parse_dataset(std::istream& in, DatasetFormat format) {
  const FormatInfo info = info_for(format);
  Dataset d{std::string(to_string(format)), Matrix(0, 0), {}, info.feature_names, info.class_names};
  const std::size_t n_features = info.feature_names.size();
  std::vector<double> row(n_features);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_commas(line);
    if (fields.size() != info.columns) {
      fail(line_no, "expected " + std::to_string(info.columns) + " columns, found " +
                        std::to_string(fields.size()));
    }
    std::string_view class_field;
    switch (format) {
      case DatasetFormat::Wdbc:
        // fields[0] is the sample id, fields[1] the diagnosis.
        class_field = fields[1];
        for (std::size_t i = 0; i < n_features; ++i) row[i] = parse_real(fields[i + 2], line_no);
        break;
      case DatasetFormat::Iris:
      case DatasetFormat::Banknote:
        for (std::size_t i = 0; i < n_features; ++i) row[i] = parse_real(fields[i], line_no);
        class_field = fields[n_features];
        break;
    }
    const auto it = std::find(info.class_tokens.begin(), info.class_tokens.end(), class_field);
    if (it == info.class_tokens.end()) {
      fail(line_no, "unknown class '" + std::string(class_field) + "'");
    }
    d.features.append_row(row);
    d.labels.push_back(static_cast<int>(it - info.class_tokens.begin()));
  }
  if (d.labels.empty()) throw DataError(d.name + ": no data rows");
  d.validate();
  return d;
}

Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset file " + path.string());
  try {
    return parse_dataset(in, format);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

Dataset Normalizer::transform(const Dataset& d) const {
  Dataset out = d.select_features(kept_columns);
  for (std::size_t c = 0; c < kept_columns.size(); ++c) {
    const auto [lo, hi] = ranges[c];
    for (std::size_t r = 0; r < out.features.rows(); ++r) {
      const double v = (out.features(r, c) - lo) / (hi - lo);
      out.features(r, c) = upper * std::clamp(v, 0.0, 1.0);
    }
  }
  return out;
}

Dataset Normalizer::inverse(const Dataset& normalized) const {
  if (normalized.num_features() != kept_columns.size()) {
    throw DataError("inverse normalization: column count mismatch");
  }
  Dataset out = normalized;
  for (std::size_t c = 0; c < kept_columns.size(); ++c) {
    const auto [lo, hi] = ranges[c];
    for (std::size_t r = 0; r < out.features.rows(); ++r) {
      out.features(r, c) = lo + (normalized.features(r, c) / upper) * (hi - lo);
    }
  }
  return out;
}

nlohmann::json Normalizer::to_json() const {
  nlohmann::json j;
  j["kept_columns"] = kept_columns;
  j["upper"] = upper;
  auto& r = j["ranges"] = nlohmann::json::array();
  for (const auto& fr : ranges) r.push_back({fr.min, fr.max});
  return j;
}

Normalizer fit_min_max(const Dataset& d, std::span<const std::size_t> fit_rows,
                       std::vector<std::string>* warnings, double upper) {
  if (fit_rows.empty()) throw DataError("min-max normalization needs at least one fit row");
  if (!(upper > 0.0)) throw std::invalid_argument("normalization upper bound must be positive");
  Normalizer n;
  n.upper = upper;
  for (std::size_t c = 0; c < d.num_features(); ++c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (auto r : fit_rows) {
      lo = std::min(lo, d.features(r, c));
      hi = std::max(hi, d.features(r, c));
    }
    if (!(hi > lo)) {
      if (warnings) {
        const std::string fname = c < d.feature_names.size() ? d.feature_names[c] : std::to_string(c);
        warnings->push_back("feature '" + fname + "' is constant on the fit rows; dropped");
      }
      continue;
    }
    n.kept_columns.push_back(c);
    n.ranges.push_back({lo, hi});
  }
  return n;
}

NormalizeResult min_max_normalize(const Dataset& d, std::span<const std::size_t> fit_rows) {
  NormalizeResult res;
  res.params = fit_min_max(d, fit_rows, &res.warnings);
  res.data = res.params.transform(d);
  return res;
}

SplitResult stratified_split(const Dataset& d, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw std::invalid_argument("test fraction must lie strictly between 0 and 1");
  }
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < d.size(); ++i) by_class[d.labels[i]].push_back(i);
  SplitResult out;
  for (auto& [label, rows] : by_class) {
    if (rows.size() < 2) {
      throw DataError("class " + std::to_string(label) + " has fewer than 2 instances; cannot split");
    }
    Rng rng = make_rng(derive_seed(seed, static_cast<std::uint64_t>(label)));
    shuffle(rows.begin(), rows.end(), rng);
    auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(rows.size())));
    n_test = std::clamp<std::size_t>(n_test, 1, rows.size() - 1);
    out.test_rows.insert(out.test_rows.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n_test));
    out.train_rows.insert(out.train_rows.end(), rows.begin() + static_cast<std::ptrdiff_t>(n_test), rows.end());
  }
  std::sort(out.train_rows.begin(), out.train_rows.end());
  std::sort(out.test_rows.begin(), out.test_rows.end());
  out.train = d.subset(out.train_rows);
  out.test = d.subset(out.test_rows);
  return out;
}

void write_csv(const Dataset& d, std::ostream& out) {
  for (std::size_t c = 0; c < d.num_features(); ++c) {
    out << (c < d.feature_names.size() ? d.feature_names[c] : "f" + std::to_string(c)) << ',';
  }
  out << "label\n";
  out << std::setprecision(17);
  for (std::size_t r = 0; r < d.size(); ++r) {
    for (double v : d.features.row(r)) out << v << ',';
    out << d.labels[r] << '\n';
  }
}

Dataset read_csv(std::istream& in, std::string name, std::vector<std::string> class_names) {
  Dataset d{std::move(name), Matrix(0, 0), {}, {}, std::move(class_names)};
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw DataError("empty CSV");
  ++line_no;
  auto header = split_commas(line);
  if (header.size() < 2 || header.back() != "label") fail(line_no, "header must end with 'label'");
  for (std::size_t i = 0; i + 1 < header.size(); ++i) d.feature_names.emplace_back(header[i]);
  std::vector<double> row(d.feature_names.size());
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_commas(line);
    if (fields.size() != header.size()) fail(line_no, "wrong column count");
    for (std::size_t i = 0; i < row.size(); ++i) row[i] = parse_real(fields[i], line_no);
    const double lab = parse_real(fields.back(), line_no);
    if (lab != std::floor(lab)) fail(line_no, "label must be an integer");
    d.features.append_row(row);
    d.labels.push_back(static_cast<int>(lab));
  }
  if (d.features.cols() == 0 && d.features.rows() == 0) d.features = Matrix(0, row.size());
  d.validate();
  return d;
}

}  // namespace qkb::data
