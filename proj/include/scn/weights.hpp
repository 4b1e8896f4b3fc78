#pragma once

// Output-weight evaluation for the three construction schemes.

#include <span>
#include <vector>

#include "scn/linalg.hpp"

namespace scn {

/// beta_q = e_q^T h / h^T h. Throws DegenerateCandidate for a zero column.
std::vector<double> eval_constructive(const Matrix& e, std::span<const double> h);

/// Least-squares weights over all L columns: pinv(H) T.
Matrix eval_global(const Matrix& h, const Matrix& t, SolveTolerance tol);
Matrix eval_global(const Matrix& h, const Matrix& t);

/// Keeps the first L-K rows fixed at beta_prev and re-solves the last K rows
/// against T - H[:, :L-K] beta_prev. Falls back to eval_global when L <= K.
Matrix eval_window(const Matrix& h, const Matrix& t, const Matrix& beta_prev, std::size_t k,
                   SolveTolerance tol);
Matrix eval_window(const Matrix& h, const Matrix& t, const Matrix& beta_prev, std::size_t k);

}  // namespace scn
