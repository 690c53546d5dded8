#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "crowdsel/matrix.hpp"

namespace crowdsel {

// Anything wrong with a dataset file or its contents. The CLI maps this to
// exit code 2.
class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Immutable after construction; safe for concurrent reads.
struct Dataset {
  Matrix features;                         // m samples x n features
  std::vector<int> labels;                 // encoded 0..c-1, first-appearance order
  std::vector<std::string> feature_names;  // length n, unique
  std::vector<std::string> label_names;    // encoded label -> original text
  std::string label_column = "class";      // header name the labels came from

  std::size_t n_samples() const { return features.rows; }
  std::size_t n_features() const { return features.cols; }
  std::size_t n_classes() const { return label_names.size(); }
  std::vector<std::size_t> class_counts() const;

  // Enforces: m >= 2, n >= 1, >= 2 classes, unique feature names, finite
  // values. Throws DatasetError.
  void validate() const;

  bool operator==(const Dataset&) const = default;
};

// Per-feature min/max fitted on training rows only. apply() maps fitted
// values into [0,1]; out-of-range values extend affinely (no clamping);
// constant features map to 0.
struct Scaler {
  struct Range {
    double min = 0.0;
    double max = 0.0;
    bool operator==(const Range&) const = default;
  };
  std::vector<Range> ranges;

  double apply(double value, std::size_t feature) const {
    const Range& r = ranges[feature];
    if (r.max == r.min) return 0.0;
    return (value - r.min) / (r.max - r.min);
  }

  bool operator==(const Scaler&) const = default;
};

// Loads a UTF-8 comma-separated file with one header row (see
// docs/dataset-format.md). label_column empty means: column named "class"
// if present, otherwise the last column.
Dataset load_csv(const std::string& path, const std::string& label_column = "");

// Same parser over an already-open stream; `source` is used in error text.
Dataset parse_csv(std::istream& in, const std::string& source,
                  const std::string& label_column = "");

// Inverse of load_csv: header then one row per sample, numbers in shortest
// round-trip form so load(save(ds)) == ds.
void save_csv(const Dataset& ds, std::ostream& out);
void save_csv(const Dataset& ds, const std::string& path);

// Min/max over the given rows only, all features. Throws on an empty or
// invalid row set.
Scaler fit_scaler(const Dataset& ds, std::span<const int> rows);

// Restricted variant used by cross-validation: ranges for `columns` only,
// in that order (Scaler index i corresponds to columns[i]).
Scaler fit_scaler(const Dataset& ds, std::span<const int> rows,
                  std::span<const int> columns);

}  // namespace crowdsel
