#include "scn/configurator.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <thread>

#include "scn/kernels.hpp"

namespace scn {
namespace {

constexpr std::uint64_t kTauStreamTag = std::numeric_limits<std::uint64_t>::max();

struct RoundBest {
  std::optional<CandidateScore> best;
  std::size_t admissible = 0;
};

bool better(const CandidateScore& a, const CandidateScore& b) {
  if (a.xi.total != b.xi.total) return a.xi.total > b.xi.total;
  return a.trial_index < b.trial_index;
}

// Scores trials [begin, end) of one round. Only the best admissible candidate
// (and its activation column) is retained.
RoundBest score_range(const Matrix& e, const Matrix& x, std::span<const double> e_norms_sq,
                      const ScnConfig& cfg, std::size_t l, std::size_t lambda_index,
                      std::size_t round, double r, double mu, std::size_t begin, std::size_t end) {
  RoundBest out;
  const double lambda = cfg.upsilon[lambda_index];
  const auto d = static_cast<std::size_t>(x.cols());
  Vector h(x.rows());
  for (std::size_t t = begin; t < end; ++t) {
    HiddenNode node = sample_candidate(lambda, d, cfg.activation,
                                       candidate_stream(cfg.seed, l, lambda_index, round, t));
    node_activation_into(node, x, as_span(h));
    const double hh = kernels::dot(as_span(h), as_span(h));
    if (!(hh > kDegenerateNormSq)) continue;
    XiScores xi = xi_scores(e, as_span(h), hh, e_norms_sq, r, mu);
    if (xi.min() < 0.0) continue;
    ++out.admissible;
    CandidateScore cand{std::move(node), Vector(), std::move(xi), lambda_index, t};
    if (!out.best || better(cand, *out.best)) {
      cand.h = h;
      out.best = std::move(cand);
    }
  }
  return out;
}

RoundBest score_round(const Matrix& e, const Matrix& x, std::span<const double> e_norms_sq,
                      const ScnConfig& cfg, std::size_t l, std::size_t lambda_index, std::size_t round,
                      double r, double mu) {
  const std::size_t jobs = std::min(cfg.jobs, cfg.t_max);
  if (jobs <= 1) return score_range(e, x, e_norms_sq, cfg, l, lambda_index, round, r, mu, 0, cfg.t_max);

  std::vector<RoundBest> parts(jobs);
  std::vector<std::thread> workers;
  const std::size_t chunk = (cfg.t_max + jobs - 1) / jobs;
  for (std::size_t j = 0; j < jobs; ++j) {
    const std::size_t begin = j * chunk;
    const std::size_t end = std::min(cfg.t_max, begin + chunk);
    workers.emplace_back([&, j, begin, end] {
      parts[j] = score_range(e, x, e_norms_sq, cfg, l, lambda_index, round, r, mu, begin, end);
    });
  }
  for (auto& w : workers) w.join();

  RoundBest out;
  for (auto& p : parts) {
    out.admissible += p.admissible;
    if (p.best && (!out.best || better(*p.best, *out.best))) out.best = std::move(p.best);
  }
  return out;
}

}  // namespace

double XiScores::min() const {
  return per_output.empty() ? 0.0 : *std::min_element(per_output.begin(), per_output.end());
}

double mu_l(double r, std::size_t l) { return (1.0 - r) / (static_cast<double>(l) + 1.0); }

XiScores xi_scores(const Matrix& e, std::span<const double> h, double h_norm_sq,
                   std::span<const double> e_norms_sq, double r, double mu) {
  if (static_cast<std::size_t>(e.rows()) != h.size()) {
    throw std::invalid_argument("xi_scores: residual has " + std::to_string(e.rows()) +
                                " rows, activation has " + std::to_string(h.size()));
  }
  if (e_norms_sq.size() != static_cast<std::size_t>(e.cols())) {
    throw std::invalid_argument("xi_scores: one residual norm per output expected");
  }
  if (!(h_norm_sq > kDegenerateNormSq)) {
    throw DegenerateCandidate("xi_scores: activation column has zero norm");
  }
  const double slack = 1.0 - r - mu;
  XiScores xi;
  xi.per_output.resize(static_cast<std::size_t>(e.cols()));
  for (Eigen::Index q = 0; q < e.cols(); ++q) {
    const double eh = kernels::dot(col_span(e, q), h);
    xi.per_output[q] = eh * eh / h_norm_sq - slack * e_norms_sq[q];
    xi.total += xi.per_output[q];
  }
  return xi;
}

XiScores xi_scores(const Matrix& e, std::span<const double> h, double r, double mu) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("xi_scores: r must lie in (0, 1)");
  if (!(mu >= 0.0) || !(r + mu < 1.0)) throw std::invalid_argument("xi_scores: need mu >= 0, r + mu < 1");
  std::vector<double> e_norms_sq(static_cast<std::size_t>(e.cols()));
  for (Eigen::Index q = 0; q < e.cols(); ++q) e_norms_sq[q] = kernels::dot(col_span(e, q), col_span(e, q));
  return xi_scores(e, h, kernels::dot(h, h), e_norms_sq, r, mu);
}

RngStream candidate_stream(std::uint64_t seed, std::size_t l, std::size_t lambda_index,
                           std::size_t round, std::size_t trial) {
  return RngStream(seed, {l, lambda_index, round, trial});
}

HiddenNode sample_candidate(double lambda, std::size_t d, ActivationKind activation, RngStream rng) {
  HiddenNode node;
  node.w.resize(d);
  for (auto& wi : node.w) wi = rng.symmetric(lambda);
  node.b = rng.symmetric(lambda);
  node.activation = activation;
  node.lambda_used = lambda;
  return node;
}

NodeSearchResult find_best_node(const Matrix& e, const Matrix& x, const ScnConfig& cfg, std::size_t l) {
  if (e.rows() != x.rows()) throw std::invalid_argument("find_best_node: residual and X row counts differ");
  if (l < 1) throw std::invalid_argument("find_best_node: node index starts at 1");

  std::vector<double> e_norms_sq(static_cast<std::size_t>(e.cols()));
  for (Eigen::Index q = 0; q < e.cols(); ++q) e_norms_sq[q] = kernels::dot(col_span(e, q), col_span(e, q));

  NodeSearchResult result;
  double r = cfg.r0;
  auto grow = [&](std::size_t j, std::size_t round) {
    double tau = (1.0 - r) / 2.0;
    if (cfg.tau_mode == TauMode::Random) {
      RngStream rng(cfg.seed, {l, j, round, kTauStreamTag});
      tau = (1.0 - r) * rng.uniform_open01();
    }
    // r stays strictly below 1 even after many halvings.
    if (r + tau < 1.0) {
      r += tau;
      ++result.r_growths;
    }
  };
  auto attempt = [&](std::size_t j, std::size_t round) {
    const double mu = mu_l(r, l);
    RoundBest rb = score_round(e, x, e_norms_sq, cfg, l, j, round, r, mu);
    result.candidates_tried += cfg.t_max;
    result.admissible_seen += rb.admissible;
    if (rb.best) {
      result.best = std::move(rb.best);
      result.r = r;
      result.mu = mu;
      return true;
    }
    return false;
  };
  if (cfg.search_order == SearchOrder::ContractionFirst) {
    for (std::size_t round = 0; round <= cfg.max_r_rounds_per_lambda; ++round) {
      for (std::size_t j = 0; j < cfg.upsilon.size(); ++j) {
        if (attempt(j, round)) return result;
      }
      if (round < cfg.max_r_rounds_per_lambda) grow(0, round);
    }
  } else {
    for (std::size_t j = 0; j < cfg.upsilon.size(); ++j) {
      for (std::size_t round = 0; round <= cfg.max_r_rounds_per_lambda; ++round) {
        if (attempt(j, round)) return result;
        if (round == cfg.max_r_rounds_per_lambda) break;
        grow(j, round);
      }
    }
  }
  result.r = r;
  result.mu = mu_l(r, l);
  return result;
}

}  // namespace scn
