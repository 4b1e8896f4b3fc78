#pragma once

// DB1 benchmark suite: accuracy at L = 25/50, efficiency at a fixed training
// tolerance, and the SC-II window-size sweep.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "scn/config.hpp"
#include "scn/data.hpp"
#include "scn/trainer.hpp"

namespace scn::bench {

struct Options {
  std::size_t trials = 20;
  std::uint64_t seed = 2017;
  std::uint64_t data_seed = 0;
  std::size_t jobs = 1;
  std::size_t n_train = 1000;
  std::size_t n_test = 300;
  std::size_t sc2_window = 15;
  double epsilon = 0.05;
  std::size_t efficiency_l_max = 100;
  std::size_t sweep_l = 35;
  std::vector<std::size_t> sweep_windows{5, 10, 15, 20, 25, 30, 35};
};

struct AccuracyRow {
  std::string algorithm;
  TrialsSummary at25;
  TrialsSummary at50;
};

struct EfficiencyRow {
  std::string algorithm;
  TrialsSummary summary;  // nodes/time to tolerance, test RMSE at stop
  std::size_t max_nodes = 0;
};

struct SweepRow {
  std::size_t window = 0;
  TrialsSummary accuracy;    // at L = sweep_l, no tolerance stop
  TrialsSummary efficiency;  // stop at epsilon
};

struct Db1Data {
  Dataset train;
  Dataset test;
};

/// DB1 normalized with training statistics.
Db1Data prepare_db1(const Options& opt);

/// Baseline configuration shared by all suite runs (defaults of the suite).
ScnConfig base_config(const Options& opt, Algorithm algorithm);

std::vector<AccuracyRow> accuracy_table(const Db1Data& data, const Options& opt);
std::vector<EfficiencyRow> efficiency_table(const Db1Data& data, const Options& opt);
std::vector<SweepRow> window_sweep(const Db1Data& data, const Options& opt);

void print_accuracy(std::ostream& out, const std::vector<AccuracyRow>& rows);
void print_efficiency(std::ostream& out, const std::vector<EfficiencyRow>& rows, double epsilon);
void print_sweep(std::ostream& out, const std::vector<SweepRow>& rows, std::size_t l, double epsilon);

void write_accuracy_csv(const std::filesystem::path& path, const std::vector<AccuracyRow>& rows);
void write_efficiency_csv(const std::filesystem::path& path, const std::vector<EfficiencyRow>& rows);
void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);

}  // namespace scn::bench
