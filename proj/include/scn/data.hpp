#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>

#include "scn/linalg.hpp"
#include "scn/model.hpp"

namespace scn {

struct Dataset {
  Matrix x;  // N x d
  Matrix t;  // N x m
  NormMeta norm_meta;
  std::string provenance;
  bool normalized = false;

  std::size_t size() const { return static_cast<std::size_t>(x.rows()); }
  std::size_t input_dim() const { return static_cast<std::size_t>(x.cols()); }
  std::size_t output_dim() const { return static_cast<std::size_t>(t.cols()); }
};

class CsvError : public std::runtime_error {
 public:
  CsvError(const std::string& message, std::size_t row, std::size_t col);
  std::size_t row() const { return row_; }  // 1-based line number, 0 if not applicable
  std::size_t col() const { return col_; }  // 1-based field index, 0 if not applicable

 private:
  std::size_t row_;
  std::size_t col_;
};

struct SplitSpec {
  double train_fraction = 0.75;
  std::uint64_t seed = 0;
};

/// 0.2 exp(-(10x-4)^2) + 0.5 exp(-(80x-40)^2) + 0.3 exp(-(80x-20)^2)
double db1_target(double x);

/// Raw (unnormalized) DB1: training inputs i.i.d. U[0,1], test inputs on a
/// regular grid over [0,1] including both endpoints.
std::pair<Dataset, Dataset> gen_db1(std::size_t n_train = 1000, std::size_t n_test = 300,
                                    std::uint64_t seed = 0);

/// Smooth multi-input regression set: t = a^T x / d + sigmoid(c^T (x - 1/2)),
/// x ~ U[0,1]^d, a ~ U[-1,1]^d and c ~ U[-4,4]^d drawn from `seed`.
/// Used to exercise the CSV pipeline when the KEEL sets are not at hand.
Dataset gen_linear_sigmoid(std::size_t n, std::size_t d, std::uint64_t seed);

/// Comma-separated numeric file; the last `target_columns` columns are targets.
/// A non-numeric first line is taken as a header.
Dataset load_csv(const std::filesystem::path& path, std::size_t target_columns);

/// Writes X then T columns with a header line x1..xd,t1..tm.
void write_csv(const std::filesystem::path& path, const Dataset& ds);

/// Min-max statistics of ds's own columns.
NormMeta minmax_meta(const Dataset& ds);

/// Rescales ds with its own statistics (min -> 0, max -> 1, constant -> 0.5).
Dataset normalize_minmax(const Dataset& ds);

/// Rescales ds with externally supplied statistics.
Dataset apply_normalization(const Dataset& ds, const NormMeta& meta);

/// Normalizes both partitions with the training partition's statistics.
std::pair<Dataset, Dataset> normalize_pair(const Dataset& train, const Dataset& test);

/// Random partition; train gets ceil(fraction * N) rows.
std::pair<Dataset, Dataset> split(const Dataset& ds, SplitSpec spec);

/// sqrt( (1/N) sum_i sum_q (pred_iq - target_iq)^2 )
double rmse(const Matrix& pred, const Matrix& target);

}  // namespace scn
