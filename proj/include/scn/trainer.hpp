#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "scn/config.hpp"
#include "scn/configurator.hpp"
#include "scn/data.hpp"
#include "scn/model.hpp"

namespace scn {

enum class StopReason { ToleranceMet, NodeBudgetExhausted, Stalled };

std::string_view to_string(StopReason s);

/// One accepted node.
struct TraceRecord {
  std::size_t l = 0;
  double train_residual_frob = 0.0;
  double train_rmse = 0.0;
  std::optional<double> test_rmse;
  double r_at_acceptance = 0.0;
  double mu = 0.0;
  double lambda_used = 0.0;
  double xi_min = 0.0;  // min_q xi_{L,q} at acceptance; 0 for IRVFL (unsupervised)
  std::size_t candidates_tried = 0;
  double elapsed_s = 0.0;  // since the start of construction
};

struct TrainingTrace {
  double initial_residual_frob = 0.0;
  double initial_train_rmse = 0.0;
  std::vector<TraceRecord> records;
};

struct TrainResult {
  ScnModel model;
  TrainingTrace trace;
  StopReason stop;
  double elapsed_s = 0.0;

  double final_train_rmse() const {
    return trace.records.empty() ? trace.initial_train_rmse : trace.records.back().train_rmse;
  }
  std::optional<double> final_test_rmse() const;
};

/// Snapshot handed to a StepObserver right after node L is accepted.
struct StepEvent {
  std::size_t l;
  const Matrix& residual_before;  // e_{L-1}
  const Matrix& residual_after;   // e_L
  std::span<const double> h;      // activation column of the new node
  double r;
  double mu;
};

using StepObserver = std::function<void(const StepEvent&)>;

/// Incremental construction on a normalized dataset. `test`, when given, must
/// be normalized with the same statistics; it only feeds the trace.
TrainResult train(const Dataset& train_set, const ScnConfig& cfg, const Dataset* test_set = nullptr,
                  const StepObserver& observer = {});

struct Stat {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for a single value
};

Stat mean_std(std::span<const double> values);

struct TrialsSummary {
  std::size_t trials = 0;
  Stat train_rmse;
  Stat test_rmse;
  Stat nodes;
  Stat time_s;
  std::size_t tolerance_met = 0;
  std::size_t stalled = 0;
};

struct TrialsReport {
  std::vector<TrainResult> runs;
  TrialsSummary summary;
};

/// Seed for trial t, derived from the configured master seed.
std::uint64_t trial_seed(std::uint64_t master, std::size_t trial);

/// n independent runs with derived seeds; `jobs` runs execute concurrently.
TrialsReport run_trials(const Dataset& train_set, const ScnConfig& cfg, std::size_t n_trials,
                        const Dataset* test_set = nullptr, std::size_t jobs = 1);

/// Summary of RMSE at node count L taken from each run's trace (runs that
/// stopped earlier contribute their final values).
TrialsSummary summarize_at(std::span<const TrainResult> runs, std::size_t l);

}  // namespace scn
