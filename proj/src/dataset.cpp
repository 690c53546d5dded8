#include "crowdsel/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

namespace crowdsel {

namespace {

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.emplace_back(line.substr(start));
      break;
    }
    cells.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

[[noreturn]] void fail(const std::string& source, const std::string& what) {
  throw DatasetError(source + ": " + what);
}

}  // namespace

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(n_classes(), 0);
  for (int y : labels) counts[static_cast<std::size_t>(y)]++;
  return counts;
}

void Dataset::validate() const {
  if (n_samples() < 2) throw DatasetError("dataset needs at least 2 samples");
  if (n_features() < 1) throw DatasetError("dataset needs at least 1 feature");
  if (labels.size() != n_samples()) throw DatasetError("label count does not match sample count");
  if (feature_names.size() != n_features())
    throw DatasetError("feature name count does not match feature count");
  if (label_names.size() < 2) throw DatasetError("dataset has a single class");

  std::unordered_set<std::string> seen;
  for (const auto& name : feature_names)
    if (!seen.insert(name).second) throw DatasetError("duplicate feature name '" + name + "'");

  for (double v : features.data)
    if (!std::isfinite(v)) throw DatasetError("non-finite feature value");
  for (int y : labels)
    if (y < 0 || static_cast<std::size_t>(y) >= label_names.size())
      throw DatasetError("label out of range");
}

Dataset parse_csv(std::istream& in, const std::string& source,
                  const std::string& label_column) {
  std::string line;
  if (!std::getline(in, line)) fail(source, "empty file");
  strip_cr(line);
  const std::vector<std::string> header = split_line(line);
  if (header.empty()) fail(source, "empty header row");

  // Resolve the label column: explicit name, else "class", else last.
  std::size_t label_idx = header.size() - 1;
  if (!label_column.empty()) {
    const auto it = std::find(header.begin(), header.end(), label_column);
    if (it == header.end()) fail(source, "label column '" + label_column + "' not found");
    label_idx = static_cast<std::size_t>(it - header.begin());
  } else {
    const auto it = std::find(header.begin(), header.end(), "class");
    if (it != header.end()) label_idx = static_cast<std::size_t>(it - header.begin());
  }
  if (header.size() < 2) fail(source, "need at least one feature column besides the label");

  Dataset ds;
  ds.label_column = header[label_idx];
  for (std::size_t j = 0; j < header.size(); ++j)
    if (j != label_idx) ds.feature_names.push_back(header[j]);

  const std::size_t n = ds.feature_names.size();
  std::unordered_map<std::string, int> label_codes;
  std::vector<double> values;
  std::size_t line_no = 1;

  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_line(line);
    if (cells.size() != header.size())
      fail(source, "line " + std::to_string(line_no) + ": expected " +
                       std::to_string(header.size()) + " columns, got " +
                       std::to_string(cells.size()));

    std::size_t feat = 0;
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (j == label_idx) {
        const std::string& text = cells[j];
        if (text.empty())
          fail(source, "line " + std::to_string(line_no) + ": empty label");
        auto [it, inserted] = label_codes.try_emplace(text, static_cast<int>(ds.label_names.size()));
        if (inserted) ds.label_names.push_back(text);
        ds.labels.push_back(it->second);
        continue;
      }
      const std::string& cell = cells[j];
      const std::string& col_name = ds.feature_names[feat];
      if (cell.empty())
        fail(source, "line " + std::to_string(line_no) + ": missing value in column '" +
                         col_name + "'");
      double v = 0.0;
      const char* first = cell.data();
      const char* last = cell.data() + cell.size();
      const auto res = std::from_chars(first, last, v);
      if (res.ec != std::errc{} || res.ptr != last)
        fail(source, "line " + std::to_string(line_no) + ": column '" + col_name +
                         "': '" + cell + "' is not a number");
      if (!std::isfinite(v))
        fail(source, "line " + std::to_string(line_no) + ": missing value (" + cell +
                         ") in column '" + col_name + "'");
      values.push_back(v);
      ++feat;
    }
  }

  const std::size_t m = ds.labels.size();
  ds.features = Matrix(m, n);
  ds.features.data = std::move(values);
  ds.validate();
  return ds;
}

Dataset load_csv(const std::string& path, const std::string& label_column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError(path + ": cannot open file");
  return parse_csv(in, path, label_column);
}

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

void save_csv(const Dataset& ds, std::ostream& out) {
  for (const auto& name : ds.feature_names) {
    if (name.find(',') != std::string::npos || name.find('\n') != std::string::npos)
      throw DatasetError("feature name '" + name + "' contains a separator");
    out << name << ',';
  }
  if (ds.label_column.find(',') != std::string::npos)
    throw DatasetError("label column name contains a separator");
  out << ds.label_column << '\n';

  for (std::size_t i = 0; i < ds.n_samples(); ++i) {
    for (std::size_t j = 0; j < ds.n_features(); ++j)
      out << format_double(ds.features(i, j)) << ',';
    const std::string& label = ds.label_names[static_cast<std::size_t>(ds.labels[i])];
    if (label.find(',') != std::string::npos || label.find('\n') != std::string::npos)
      throw DatasetError("label text '" + label + "' contains a separator");
    out << label << '\n';
  }
}

void save_csv(const Dataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DatasetError(path + ": cannot open file for writing");
  save_csv(ds, out);
}

Scaler fit_scaler(const Dataset& ds, std::span<const int> rows,
                  std::span<const int> columns) {
  if (rows.empty()) throw std::invalid_argument("fit_scaler: empty row set");
  for (int r : rows)
    if (r < 0 || static_cast<std::size_t>(r) >= ds.n_samples())
      throw std::invalid_argument("fit_scaler: row index out of range");

  Scaler sc;
  sc.ranges.resize(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const int j = columns[c];
    double lo = ds.features(static_cast<std::size_t>(rows[0]), static_cast<std::size_t>(j));
    double hi = lo;
    for (int r : rows) {
      const double v = ds.features(static_cast<std::size_t>(r), static_cast<std::size_t>(j));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    sc.ranges[c] = {lo, hi};
  }
  return sc;
}

Scaler fit_scaler(const Dataset& ds, std::span<const int> rows) {
  std::vector<int> all(ds.n_features());
  for (std::size_t j = 0; j < all.size(); ++j) all[j] = static_cast<int>(j);
  return fit_scaler(ds, rows, all);
}

}  // namespace crowdsel
