#pragma once

#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace scn {

/// Dense column-major storage. Columns are contiguous, which the activation
/// and residual kernels rely on.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Raised when NaN/Inf reaches a numeric entry point.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Singular values at or below rel_cutoff * sigma_max are treated as zero.
struct SolveTolerance {
  double rel_cutoff;

  /// max(rows, cols) * machine epsilon, capped below 1e-3.
  static SolveTolerance for_shape(Eigen::Index rows, Eigen::Index cols);
};

void require_finite(const Matrix& m, const char* what);

/// Minimum-norm least-squares solution of A X = B (pseudoinverse solve).
Matrix lstsq_min_norm(const Matrix& a, const Matrix& b, SolveTolerance tol);
Matrix lstsq_min_norm(const Matrix& a, const Matrix& b);

double col_inner(std::span<const double> u, std::span<const double> v);
double frob_norm(const Matrix& m);

inline std::span<const double> col_span(const Matrix& m, Eigen::Index j) {
  return {m.data() + j * m.rows(), static_cast<std::size_t>(m.rows())};
}
inline std::span<double> col_span(Matrix& m, Eigen::Index j) {
  return {m.data() + j * m.rows(), static_cast<std::size_t>(m.rows())};
}
inline std::span<const double> as_span(const Vector& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}
inline std::span<double> as_span(Vector& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace scn
