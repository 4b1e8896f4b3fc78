#include "scn/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <vector>

#include "scn/rng.hpp"

namespace scn {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? line.npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> parse_number(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

Dataset select_rows(const Dataset& ds, const std::vector<std::size_t>& rows) {
  Dataset out;
  out.x.resize(static_cast<Eigen::Index>(rows.size()), ds.x.cols());
  out.t.resize(static_cast<Eigen::Index>(rows.size()), ds.t.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.x.row(static_cast<Eigen::Index>(i)) = ds.x.row(static_cast<Eigen::Index>(rows[i]));
    out.t.row(static_cast<Eigen::Index>(i)) = ds.t.row(static_cast<Eigen::Index>(rows[i]));
  }
  out.norm_meta = ds.norm_meta;
  out.provenance = ds.provenance;
  out.normalized = ds.normalized;
  return out;
}

}  // namespace

CsvError::CsvError(const std::string& message, std::size_t row, std::size_t col)
    : std::runtime_error(row > 0 ? message + " at row " + std::to_string(row) + ", column " +
                                       std::to_string(col)
                                 : message),
      row_(row),
      col_(col) {}

double db1_target(double x) {
  const double a = 10.0 * x - 4.0;
  const double b = 80.0 * x - 40.0;
  const double c = 80.0 * x - 20.0;
  return 0.2 * std::exp(-a * a) + 0.5 * std::exp(-b * b) + 0.3 * std::exp(-c * c);
}

std::pair<Dataset, Dataset> gen_db1(std::size_t n_train, std::size_t n_test, std::uint64_t seed) {
  if (n_train < 1 || n_test < 1) throw std::invalid_argument("gen_db1: sizes must be >= 1");
  Dataset train;
  train.x.resize(static_cast<Eigen::Index>(n_train), 1);
  train.t.resize(static_cast<Eigen::Index>(n_train), 1);
  RngStream rng(seed, {0xdb1});
  for (Eigen::Index i = 0; i < train.x.rows(); ++i) {
    const double x = rng.uniform01();
    train.x(i, 0) = x;
    train.t(i, 0) = db1_target(x);
  }
  train.provenance = "synthetic-db1";
  train.norm_meta = NormMeta::identity(1, 1);

  Dataset test;
  test.x.resize(static_cast<Eigen::Index>(n_test), 1);
  test.t.resize(static_cast<Eigen::Index>(n_test), 1);
  for (Eigen::Index i = 0; i < test.x.rows(); ++i) {
    const double x = n_test == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(n_test - 1);
    test.x(i, 0) = x;
    test.t(i, 0) = db1_target(x);
  }
  test.provenance = "synthetic-db1";
  test.norm_meta = NormMeta::identity(1, 1);
  return {std::move(train), std::move(test)};
}

Dataset gen_linear_sigmoid(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n < 1 || d < 1) throw std::invalid_argument("gen_linear_sigmoid: sizes must be >= 1");
  RngStream coef(seed, {0x11a5, 0});
  std::vector<double> a(d), c(d);
  for (auto& v : a) v = coef.symmetric(1.0);
  for (auto& v : c) v = coef.symmetric(1.0) * 4.0;
  Dataset ds;
  ds.x.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  ds.t.resize(static_cast<Eigen::Index>(n), 1);
  RngStream rng(seed, {0x11a5, 1});
  for (Eigen::Index i = 0; i < ds.x.rows(); ++i) {
    double lin = 0.0;
    double z = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double x = rng.uniform01();
      ds.x(i, static_cast<Eigen::Index>(j)) = x;
      lin += a[j] * x;
      z += c[j] * (x - 0.5);
    }
    ds.t(i, 0) = lin / static_cast<double>(d) + 1.0 / (1.0 + std::exp(-z));
  }
  ds.norm_meta = NormMeta::identity(d, 1);
  ds.provenance = "synthetic-linear-sigmoid";
  return ds;
}

Dataset load_csv(const std::filesystem::path& path, std::size_t target_columns) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open " + path.string(), 0, 0);
  if (target_columns < 1) throw CsvError("at least one target column is required", 0, 0);

  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::string line;
  std::size_t line_no = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (first_content) {
      first_content = false;
      const bool numeric = std::all_of(fields.begin(), fields.end(),
                                       [](std::string_view f) { return parse_number(f).has_value(); });
      if (!numeric) {
        cols = fields.size();
        continue;  // header
      }
    }
    if (cols == 0) cols = fields.size();
    if (fields.size() != cols) {
      throw CsvError("expected " + std::to_string(cols) + " fields, found " + std::to_string(fields.size()),
                     line_no, std::min(fields.size(), cols) + 1);
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto v = parse_number(fields[c]);
      if (!v) throw CsvError("non-numeric value '" + std::string(fields[c]) + "'", line_no, c + 1);
      values.push_back(*v);
    }
    ++rows;
  }
  if (rows == 0) throw CsvError("no data rows in " + path.string(), 0, 0);
  if (cols <= target_columns) {
    throw CsvError("need more than " + std::to_string(target_columns) + " columns, found " +
                       std::to_string(cols),
                   0, 0);
  }

  const std::size_t d = cols - target_columns;
  Dataset ds;
  ds.x.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(d));
  ds.t.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(target_columns));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = values[i * cols + c];
      if (c < d) {
        ds.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = v;
      } else {
        ds.t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c - d)) = v;
      }
    }
  }
  ds.norm_meta = NormMeta::identity(d, target_columns);
  ds.provenance = "csv:" + path.string();
  return ds;
}

void write_csv(const std::filesystem::path& path, const Dataset& ds) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (Eigen::Index j = 0; j < ds.x.cols(); ++j) out << (j ? "," : "") << "x" << j + 1;
  for (Eigen::Index j = 0; j < ds.t.cols(); ++j) out << ",t" << j + 1;
  out << '\n';
  for (Eigen::Index i = 0; i < ds.x.rows(); ++i) {
    for (Eigen::Index j = 0; j < ds.x.cols(); ++j) out << (j ? "," : "") << format_double(ds.x(i, j));
    for (Eigen::Index j = 0; j < ds.t.cols(); ++j) out << ',' << format_double(ds.t(i, j));
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

NormMeta minmax_meta(const Dataset& ds) {
  if (ds.x.rows() < 1) throw std::invalid_argument("minmax_meta: empty dataset");
  NormMeta meta;
  for (Eigen::Index j = 0; j < ds.x.cols(); ++j) {
    meta.x_min.push_back(ds.x.col(j).minCoeff());
    meta.x_max.push_back(ds.x.col(j).maxCoeff());
  }
  for (Eigen::Index j = 0; j < ds.t.cols(); ++j) {
    meta.t_min.push_back(ds.t.col(j).minCoeff());
    meta.t_max.push_back(ds.t.col(j).maxCoeff());
  }
  return meta;
}

Dataset apply_normalization(const Dataset& ds, const NormMeta& meta) {
  Dataset out;
  out.x = meta.normalize_inputs(ds.x);
  out.t = meta.normalize_targets(ds.t);
  out.norm_meta = meta;
  out.provenance = ds.provenance;
  out.normalized = true;
  return out;
}

Dataset normalize_minmax(const Dataset& ds) { return apply_normalization(ds, minmax_meta(ds)); }

std::pair<Dataset, Dataset> normalize_pair(const Dataset& train, const Dataset& test) {
  const NormMeta meta = minmax_meta(train);
  return {apply_normalization(train, meta), apply_normalization(test, meta)};
}

std::pair<Dataset, Dataset> split(const Dataset& ds, SplitSpec spec) {
  const std::size_t n = ds.size();
  if (n < 2) throw std::invalid_argument("split: need at least 2 rows");
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw std::invalid_argument("split: train_fraction must lie in (0, 1)");
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // Fisher-Yates with a portable generator (std::shuffle is not reproducible
  // across standard libraries).
  RngStream rng(spec.seed, {0x5b17});
  for (std::size_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform01() * static_cast<double>(i + 1));
    std::swap(idx[i], idx[std::min(j, i)]);
  }
  auto n_train = static_cast<std::size_t>(std::ceil(spec.train_fraction * static_cast<double>(n) - 1e-9));
  n_train = std::clamp<std::size_t>(n_train, 1, n - 1);
  std::vector<std::size_t> train_rows(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
  std::vector<std::size_t> test_rows(idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
  std::sort(train_rows.begin(), train_rows.end());
  std::sort(test_rows.begin(), test_rows.end());
  return {select_rows(ds, train_rows), select_rows(ds, test_rows)};
}

double rmse(const Matrix& pred, const Matrix& target) {
  if (pred.rows() != target.rows() || pred.cols() != target.cols()) {
    throw std::invalid_argument("rmse: shape mismatch");
  }
  if (pred.rows() == 0) throw std::invalid_argument("rmse: no samples");
  return std::sqrt((pred - target).squaredNorm() / static_cast<double>(pred.rows()));
}

}  // namespace scn
