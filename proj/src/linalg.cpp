#include "scn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scn/kernels.hpp"

namespace scn {

SolveTolerance SolveTolerance::for_shape(Eigen::Index rows, Eigen::Index cols) {
  const double scale = static_cast<double>(std::max<Eigen::Index>({rows, cols, 1}));
  return {std::min(scale * std::numeric_limits<double>::epsilon(), 1e-4)};
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw NumericError(std::string(what) + " contains NaN or Inf");
}

Matrix lstsq_min_norm(const Matrix& a, const Matrix& b, SolveTolerance tol) {
  if (a.rows() != b.rows()) {
    throw std::invalid_argument("lstsq_min_norm: A has " + std::to_string(a.rows()) +
                                " rows, B has " + std::to_string(b.rows()));
  }
  if (a.rows() < 1 || a.cols() < 1 || b.cols() < 1) {
    throw std::invalid_argument("lstsq_min_norm: empty operand");
  }
  if (!(tol.rel_cutoff > 0.0 && tol.rel_cutoff < 1e-3)) {
    throw std::invalid_argument("lstsq_min_norm: rel_cutoff must lie in (0, 1e-3)");
  }
  require_finite(a, "lstsq_min_norm: A");
  require_finite(b, "lstsq_min_norm: B");

  // Jacobi SVD (QR-preconditioned for tall A). Singular values below the
  // threshold are dropped, which yields the pseudoinverse solution.
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(tol.rel_cutoff);
  Matrix x = svd.solve(b);
  require_finite(x, "lstsq_min_norm: solution");
  return x;
}

Matrix lstsq_min_norm(const Matrix& a, const Matrix& b) {
  return lstsq_min_norm(a, b, SolveTolerance::for_shape(a.rows(), a.cols()));
}

double col_inner(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw std::invalid_argument("col_inner: length mismatch");
  return kernels::dot(u, v);
}

double frob_norm(const Matrix& m) {
  require_finite(m, "frob_norm");
  const std::span<const double> flat{m.data(), static_cast<std::size_t>(m.size())};
  return std::sqrt(kernels::dot(flat, flat));
}

}  // namespace scn
