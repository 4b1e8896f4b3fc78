#include "scn/trainer.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "scn/kernels.hpp"
#include "scn/weights.hpp"

namespace scn {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double frob_threshold(const ScnConfig& cfg, std::size_t n) {
  return cfg.tolerance_scale == ToleranceScale::Rmse ? cfg.epsilon * std::sqrt(static_cast<double>(n))
                                                     : cfg.epsilon;
}

// First non-degenerate unconstrained draw at lambda = upsilon[0].
std::optional<std::pair<HiddenNode, Vector>> irvfl_node(const Matrix& x, const ScnConfig& cfg,
                                                        std::size_t l, std::size_t& tried) {
  Vector h(x.rows());
  for (std::size_t t = 0; t < cfg.t_max; ++t) {
    ++tried;
    HiddenNode node = sample_candidate(cfg.upsilon[0], static_cast<std::size_t>(x.cols()), cfg.activation,
                                       candidate_stream(cfg.seed, l, 0, 0, t));
    node_activation_into(node, x, as_span(h));
    if (kernels::dot(as_span(h), as_span(h)) > kDegenerateNormSq) return std::pair{std::move(node), h};
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(StopReason s) {
  switch (s) {
    case StopReason::ToleranceMet: return "tolerance_met";
    case StopReason::NodeBudgetExhausted: return "node_budget_exhausted";
    case StopReason::Stalled: return "stalled";
  }
  return "unknown";
}

std::optional<double> TrainResult::final_test_rmse() const {
  if (trace.records.empty()) return std::nullopt;
  return trace.records.back().test_rmse;
}

TrainResult train(const Dataset& train_set, const ScnConfig& cfg, const Dataset* test_set,
                  const StepObserver& observer) {
  cfg.validate();
  const Matrix& x = train_set.x;
  const Matrix& t = train_set.t;
  if (x.rows() < 1 || x.cols() < 1 || t.cols() < 1) throw std::invalid_argument("train: empty dataset");
  if (t.rows() != x.rows()) throw std::invalid_argument("train: X and T row counts differ");
  require_finite(x, "train: X");
  require_finite(t, "train: T");
  if (test_set != nullptr) {
    if (test_set->x.cols() != x.cols() || test_set->t.cols() != t.cols()) {
      throw std::invalid_argument("train: test set dimensions differ from training set");
    }
    require_finite(test_set->x, "train: test X");
    require_finite(test_set->t, "train: test T");
  }

  const auto n = static_cast<std::size_t>(x.rows());
  const auto d = static_cast<std::size_t>(x.cols());
  const auto m = static_cast<std::size_t>(t.cols());
  const auto sqrt_n = std::sqrt(static_cast<double>(n));
  const double threshold = frob_threshold(cfg, n);
  const auto l_cap = static_cast<Eigen::Index>(cfg.l_max);

  const auto start = Clock::now();

  Matrix e = t;
  Matrix h_all(x.rows(), l_cap);
  Matrix beta(0, t.cols());
  std::vector<HiddenNode> nodes;
  nodes.reserve(cfg.l_max);

  Matrix h_test;
  Matrix test_pred;
  if (test_set != nullptr) {
    h_test.resize(test_set->x.rows(), l_cap);
    test_pred = Matrix::Zero(test_set->x.rows(), t.cols());
  }

  TrainingTrace trace;
  double e_norm = frob_norm(e);
  trace.initial_residual_frob = e_norm;
  trace.initial_train_rmse = e_norm / sqrt_n;

  StopReason stop = StopReason::NodeBudgetExhausted;
  Matrix e_before;
  while (true) {
    if (e_norm <= threshold) {
      stop = StopReason::ToleranceMet;
      break;
    }
    if (nodes.size() >= cfg.l_max) {
      stop = StopReason::NodeBudgetExhausted;
      break;
    }
    const std::size_t l = nodes.size() + 1;
    const auto col = static_cast<Eigen::Index>(l - 1);

    TraceRecord rec;
    rec.l = l;
    HiddenNode node;
    if (cfg.algorithm == Algorithm::Irvfl) {
      auto drawn = irvfl_node(x, cfg, l, rec.candidates_tried);
      if (!drawn) {
        stop = StopReason::Stalled;
        break;
      }
      node = std::move(drawn->first);
      h_all.col(col) = drawn->second;
      rec.r_at_acceptance = cfg.r0;
      rec.mu = mu_l(cfg.r0, l);
    } else {
      NodeSearchResult found = find_best_node(e, x, cfg, l);
      rec.candidates_tried = found.candidates_tried;
      if (found.stalled()) {
        stop = StopReason::Stalled;
        break;
      }
      node = std::move(found.best->node);
      h_all.col(col) = found.best->h;
      rec.r_at_acceptance = found.r;
      rec.mu = found.mu;
      rec.xi_min = found.best->xi.min();
    }
    rec.lambda_used = node.lambda_used;
    if (observer) e_before = e;

    const std::span<const double> h = col_span(h_all, col);
    switch (cfg.algorithm) {
      case Algorithm::ScI:
      case Algorithm::Irvfl: {
        const std::vector<double> b = eval_constructive(e, h);
        beta.conservativeResize(static_cast<Eigen::Index>(l), Eigen::NoChange);
        for (std::size_t q = 0; q < m; ++q) {
          beta(col, static_cast<Eigen::Index>(q)) = b[q];
          kernels::axpy(-b[q], h, col_span(e, static_cast<Eigen::Index>(q)));
        }
        break;
      }
      case Algorithm::ScII:
      case Algorithm::ScIII: {
        const auto h_l = h_all.leftCols(static_cast<Eigen::Index>(l));
        if (cfg.algorithm == Algorithm::ScIII || l <= cfg.window) {
          beta = eval_global(h_l, t);
        } else {
          const auto fixed = static_cast<Eigen::Index>(l - cfg.window);
          beta = eval_window(h_l, t, beta.topRows(fixed), cfg.window);
        }
        e = t - h_l * beta;
        break;
      }
    }
    nodes.push_back(std::move(node));

    e_norm = frob_norm(e);
    rec.train_residual_frob = e_norm;
    rec.train_rmse = e_norm / sqrt_n;
    if (test_set != nullptr) {
      node_activation_into(nodes.back(), test_set->x, col_span(h_test, col));
      test_pred = h_test.leftCols(static_cast<Eigen::Index>(l)) * beta;
      rec.test_rmse = rmse(test_pred, test_set->t);
    }
    rec.elapsed_s = seconds_since(start);
    trace.records.push_back(rec);

    if (observer) observer(StepEvent{l, e_before, e, h, rec.r_at_acceptance, rec.mu});
  }
  const double elapsed = seconds_since(start);

  ScnModel model(d, m, std::move(nodes), std::move(beta), train_set.norm_meta);
  return TrainResult{std::move(model), std::move(trace), stop, elapsed};
}

Stat mean_std(std::span<const double> values) {
  Stat s;
  if (values.empty()) return s;
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    double acc = 0.0;
    for (double v : values) acc += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(acc / static_cast<double>(values.size() - 1));
  }
  return s;
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t trial) {
  return derive_key(master, {0x7121a1, trial});
}

TrialsSummary summarize_at(std::span<const TrainResult> runs, std::size_t l) {
  std::vector<double> train, test, nodes, time;
  TrialsSummary s;
  s.trials = runs.size();
  for (const auto& run : runs) {
    const auto& recs = run.trace.records;
    const std::size_t upto = std::min(l, recs.size());
    if (upto == 0) {
      train.push_back(run.trace.initial_train_rmse);
    } else {
      const auto& r = recs[upto - 1];
      train.push_back(r.train_rmse);
      if (r.test_rmse) test.push_back(*r.test_rmse);
      time.push_back(r.elapsed_s);
    }
    nodes.push_back(static_cast<double>(upto));
    if (run.stop == StopReason::ToleranceMet) ++s.tolerance_met;
    if (run.stop == StopReason::Stalled) ++s.stalled;
  }
  s.train_rmse = mean_std(train);
  s.test_rmse = mean_std(test);
  s.nodes = mean_std(nodes);
  s.time_s = mean_std(time);
  return s;
}

TrialsReport run_trials(const Dataset& train_set, const ScnConfig& cfg, std::size_t n_trials,
                        const Dataset* test_set, std::size_t jobs) {
  if (n_trials < 1) throw std::invalid_argument("run_trials: n_trials must be >= 1");
  cfg.validate();
  std::vector<std::optional<TrainResult>> slots(n_trials);
  auto run_one = [&](std::size_t trial) {
    ScnConfig c = cfg;
    c.seed = trial_seed(cfg.seed, trial);
    slots[trial] = train(train_set, c, test_set);
  };

  jobs = std::max<std::size_t>(1, std::min(jobs, n_trials));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n_trials; ++i) run_one(i);
  } else {
    std::vector<std::thread> workers;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t i = w; i < n_trials; i += jobs) {
          try {
            run_one(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& w : workers) w.join();
    if (failure) std::rethrow_exception(failure);
  }

  TrialsReport report;
  for (auto& s : slots) report.runs.push_back(std::move(*s));
  std::vector<double> train, test, nodes, time;
  report.summary.trials = n_trials;
  for (const auto& run : report.runs) {
    train.push_back(run.final_train_rmse());
    if (auto te = run.final_test_rmse()) test.push_back(*te);
    nodes.push_back(static_cast<double>(run.model.node_count()));
    time.push_back(run.elapsed_s);
    if (run.stop == StopReason::ToleranceMet) ++report.summary.tolerance_met;
    if (run.stop == StopReason::Stalled) ++report.summary.stalled;
  }
  report.summary.train_rmse = mean_std(train);
  report.summary.test_rmse = mean_std(test);
  report.summary.nodes = mean_std(nodes);
  report.summary.time_s = mean_std(time);
  return report;
}

}  // namespace scn
