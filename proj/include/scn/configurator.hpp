#pragma once

// Hidden-node configuration: draw random candidates over the scope set,
// score them with the supervisory inequality and keep the best admissible one.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "scn/config.hpp"
#include "scn/linalg.hpp"
#include "scn/model.hpp"
#include "scn/rng.hpp"

namespace scn {

/// Candidates whose activation column has squared norm below this are dropped.
inline constexpr double kDegenerateNormSq = 1e-300;

class DegenerateCandidate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct XiScores {
  std::vector<double> per_output;  // xi_{L,q}
  double total = 0.0;              // sum over q
  double min() const;
};

struct CandidateScore {
  HiddenNode node;
  Vector h;
  XiScores xi;
  std::size_t lambda_index = 0;
  std::size_t trial_index = 0;
};

/// Outcome of one node search. `best` is empty when every scope was exhausted
/// without an admissible candidate (stalled).
struct NodeSearchResult {
  std::optional<CandidateScore> best;
  double r = 0.0;   // r in effect at acceptance (or at exhaustion)
  double mu = 0.0;  // mu_L in effect at acceptance
  std::size_t candidates_tried = 0;
  std::size_t admissible_seen = 0;
  std::size_t r_growths = 0;

  bool stalled() const { return !best.has_value(); }
};

/// mu_L = (1 - r) / (L + 1)
double mu_l(double r, std::size_t l);

/// xi_q = (e_q^T h)^2 / (h^T h) - (1 - r - mu) e_q^T e_q, for each output q.
/// Throws DegenerateCandidate when h^T h <= kDegenerateNormSq.
XiScores xi_scores(const Matrix& e, std::span<const double> h, double r, double mu);

/// Same, with e_q^T e_q and h^T h supplied by the caller.
XiScores xi_scores(const Matrix& e, std::span<const double> h, double h_norm_sq,
                   std::span<const double> e_norms_sq, double r, double mu);

/// Stream for trial `trial` of round `round` at scope index `lambda_index` of node `l`.
RngStream candidate_stream(std::uint64_t seed, std::size_t l, std::size_t lambda_index,
                           std::size_t round, std::size_t trial);

/// w_i, b ~ U[-lambda, lambda] independently.
HiddenNode sample_candidate(double lambda, std::size_t d, ActivationKind activation, RngStream rng);

/// Searches for the L-th node (L >= 1). Each attempt draws t_max candidates
/// at one scope and keeps the admissible one (min_q xi_q >= 0) with the
/// largest total xi, lowest trial index on ties. r starts at cfg.r0 and grows
/// by tau after unsuccessful attempts, following cfg.search_order; when
/// every attempt fails the result is stalled.
NodeSearchResult find_best_node(const Matrix& e, const Matrix& x, const ScnConfig& cfg, std::size_t l);

}  // namespace scn
