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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace qkb::data {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::vector<double> column(std::size_t c) const;
  void append_row(std::span<const double> values);

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct Dataset {
  std::string name;
  Matrix features;
  std::vector<int> labels;  // in [0, class_names.size())
  std::vector<std::string> feature_names;
  std::vector<std::string> class_names;

  std::size_t size() const { return labels.size(); }
  std::size_t num_features() const { return features.cols(); }
  std::size_t num_classes() const { return class_names.size(); }

  /// Throws DataError if shapes or labels are inconsistent.
  void validate() const;
  Dataset subset(std::span<const std::size_t> rows) const;
  Dataset select_features(std::span<const std::size_t> columns) const;
};

enum class DatasetFormat { Wdbc, Iris, Banknote };

std::string_view to_string(DatasetFormat format);
DatasetFormat parse_format(std::string_view text);
/// Canonical UCI file name: wdbc.data, iris.data, data_banknote_authentication.txt.
std::string_view default_file_name(DatasetFormat format);

/// Parses a UCI comma-separated distribution. Blank lines are skipped;
/// malformed rows raise DataError with the 1-based line number.
Dataset parse_dataset(std::istream& in, DatasetFormat format);
Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format);

struct FeatureRange {
  double min = 0.0;
  double max = 1.0;
};

/// Min-max transform fitted on a row subset. Columns listed in
/// `kept_columns` (indices into the source dataset) survive; constant ones
/// are dropped during fitting.
struct Normalizer {
  std::vector<std::size_t> kept_columns;
  std::vector<FeatureRange> ranges;  // aligned with kept_columns
  double upper = 1.0;                // output range is [0, upper]

  /// Maps to [0, upper], clamping values outside the fitted range.
  Dataset transform(const Dataset& d) const;
  /// Inverse map of transform for an already-transformed dataset.
  Dataset inverse(const Dataset& normalized) const;
  nlohmann::json to_json() const;
};

struct NormalizeResult {
  Dataset data;
  Normalizer params;
  std::vector<std::string> warnings;
};

Normalizer fit_min_max(const Dataset& d, std::span<const std::size_t> fit_rows,
                       std::vector<std::string>* warnings = nullptr, double upper = 1.0);
NormalizeResult min_max_normalize(const Dataset& d, std::span<const std::size_t> fit_rows);

struct SplitResult {
  Dataset train;
  Dataset test;
  std::vector<std::size_t> train_rows;  // ascending
  std::vector<std::size_t> test_rows;   // ascending
};

/// Per-class proportional split: round(test_fraction * n_c) test rows per
/// class, at least one on each side.
SplitResult stratified_split(const Dataset& d, double test_fraction, std::uint64_t seed);

/// Internal CSV form: header of feature names plus "label", then rows
/// printed with 17 significant digits (exact round trip).
void write_csv(const Dataset& d, std::ostream& out);
Dataset read_csv(std::istream& in, std::string name, std::vector<std::string> class_names);

}  // namespace qkb::data
