#include "scn/weights.hpp"

#include <stdexcept>
#include <string>

#include "scn/configurator.hpp"
#include "scn/kernels.hpp"

namespace scn {

std::vector<double> eval_constructive(const Matrix& e, std::span<const double> h) {
  if (static_cast<std::size_t>(e.rows()) != h.size()) {
    throw std::invalid_argument("eval_constructive: residual and activation lengths differ");
  }
  const double hh = kernels::dot(h, h);
  if (!(hh > kDegenerateNormSq)) throw DegenerateCandidate("eval_constructive: zero activation column");
  std::vector<double> beta(static_cast<std::size_t>(e.cols()));
  for (Eigen::Index q = 0; q < e.cols(); ++q) beta[q] = kernels::dot(col_span(e, q), h) / hh;
  return beta;
}

Matrix eval_global(const Matrix& h, const Matrix& t, SolveTolerance tol) {
  return lstsq_min_norm(h, t, tol);
}

Matrix eval_global(const Matrix& h, const Matrix& t) { return lstsq_min_norm(h, t); }

Matrix eval_window(const Matrix& h, const Matrix& t, const Matrix& beta_prev, std::size_t k,
                   SolveTolerance tol) {
  if (k < 1) throw std::invalid_argument("eval_window: K must be >= 1");
  const auto l = static_cast<std::size_t>(h.cols());
  if (l <= k) return eval_global(h, t, tol);

  const auto fixed = static_cast<Eigen::Index>(l - k);
  const auto win = static_cast<Eigen::Index>(k);
  if (beta_prev.rows() != fixed || beta_prev.cols() != t.cols()) {
    throw std::invalid_argument("eval_window: beta_prev must be " + std::to_string(fixed) + " x " +
                                std::to_string(t.cols()));
  }
  const Matrix deflated = t - h.leftCols(fixed) * beta_prev;
  Matrix beta(static_cast<Eigen::Index>(l), t.cols());
  beta.topRows(fixed) = beta_prev;
  beta.bottomRows(win) = lstsq_min_norm(h.rightCols(win), deflated, tol);
  return beta;
}

Matrix eval_window(const Matrix& h, const Matrix& t, const Matrix& beta_prev, std::size_t k) {
  return eval_window(h, t, beta_prev, k, SolveTolerance::for_shape(h.rows(), h.cols()));
}

}  // namespace scn
