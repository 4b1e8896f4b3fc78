// scn: generate data, train and evaluate stochastic configuration networks,
// and run the DB1 benchmark suite.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scn/bench.hpp"
#include "scn/config.hpp"
#include "scn/data.hpp"
#include "scn/kernels.hpp"
#include "scn/model_io.hpp"
#include "scn/trainer.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitStalled = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad number '" + item + "' in list '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

struct GenArgs {
  std::string out = ".";
  std::string dataset = "db1";
  std::size_t n_train = 1000;
  std::size_t n_test = 300;
  std::size_t dim = 9;
  std::uint64_t seed = 0;
};

int cmd_gen_data(const GenArgs& a) {
  fs::create_directories(a.out);
  const fs::path dir(a.out);
  if (a.dataset == "db1") {
    auto [train, test] = scn::gen_db1(a.n_train, a.n_test, a.seed);
    scn::write_csv(dir / "train.csv", train);
    scn::write_csv(dir / "test.csv", test);
  } else if (a.dataset == "linear-sigmoid") {
    const auto all = scn::gen_linear_sigmoid(a.n_train + a.n_test, a.dim, a.seed);
    const double fraction = static_cast<double>(a.n_train) / static_cast<double>(a.n_train + a.n_test);
    auto [train, test] = scn::split(all, {fraction, a.seed});
    scn::write_csv(dir / "train.csv", train);
    scn::write_csv(dir / "test.csv", test);
  } else {
    throw UsageError("unknown dataset '" + a.dataset + "' (expected db1 or linear-sigmoid)");
  }
  std::cout << "wrote " << (dir / "train.csv").string() << " and " << (dir / "test.csv").string() << "\n";
  return kExitOk;
}

struct TrainArgs {
  std::string train;
  std::string test;
  std::size_t targets = 1;
  std::string algorithm = "sc3";
  std::size_t l_max = 50;
  double epsilon = 0.05;
  std::string tolerance_scale = "rmse";
  std::size_t t_max = 200;
  std::string upsilon;
  double r0 = 0.9;
  std::size_t window = 0;
  std::size_t max_r_rounds = 20;
  std::string tau_mode = "half";
  std::string search_order = "contraction-first";
  std::string activation = "sigmoid";
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  std::string model_out;
  std::string report_out;
};

int cmd_train(const TrainArgs& a) {
  scn::ScnConfig cfg;
  const auto algorithm = scn::parse_algorithm(a.algorithm);
  if (!algorithm) throw UsageError("unknown algorithm '" + a.algorithm + "'");
  cfg.algorithm = *algorithm;
  if (cfg.algorithm == scn::Algorithm::ScII && a.window == 0) {
    throw UsageError("--window is required for sc2");
  }
  cfg.l_max = a.l_max;
  cfg.epsilon = a.epsilon;
  const auto scale = scn::parse_tolerance_scale(a.tolerance_scale);
  if (!scale) throw UsageError("unknown tolerance scale '" + a.tolerance_scale + "'");
  cfg.tolerance_scale = *scale;
  cfg.t_max = a.t_max;
  if (!a.upsilon.empty()) {
    cfg.upsilon = parse_list(a.upsilon);
  } else if (cfg.algorithm == scn::Algorithm::Irvfl) {
    cfg.upsilon = {1.0};
  }
  cfg.r0 = a.r0;
  cfg.window = a.window;
  cfg.max_r_rounds_per_lambda = a.max_r_rounds;
  const auto tau = scn::parse_tau_mode(a.tau_mode);
  if (!tau) throw UsageError("unknown tau mode '" + a.tau_mode + "'");
  cfg.tau_mode = *tau;
  const auto order = scn::parse_search_order(a.search_order);
  if (!order) throw UsageError("unknown search order '" + a.search_order + "'");
  cfg.search_order = *order;
  const auto act = scn::parse_activation(a.activation);
  if (!act) throw UsageError("unknown activation '" + a.activation + "'");
  cfg.activation = *act;
  cfg.seed = a.seed;
  cfg.jobs = a.jobs;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const scn::Dataset train_raw = scn::load_csv(a.train, a.targets);
  const scn::Dataset train = scn::normalize_minmax(train_raw);
  std::optional<scn::Dataset> test;
  if (!a.test.empty()) test = scn::apply_normalization(scn::load_csv(a.test, a.targets), train.norm_meta);

  const scn::TrainResult result = scn::train(train, cfg, test ? &*test : nullptr);

  if (!a.model_out.empty()) {
    scn::TrainingSummary summary{std::string(scn::to_string(cfg.algorithm)), cfg.seed,
                                 result.final_train_rmse(), std::string(scn::to_string(result.stop))};
    scn::save_model(a.model_out, {result.model, summary});
  }
  if (!a.report_out.empty()) scn::write_report(fs::path(a.report_out), result.trace);

  std::printf("algorithm   %s\n", std::string(scn::to_string(cfg.algorithm)).c_str());
  std::printf("nodes       %zu\n", result.model.node_count());
  std::printf("train_rmse  %.6f\n", result.final_train_rmse());
  if (auto te = result.final_test_rmse()) std::printf("test_rmse   %.6f\n", *te);
  std::printf("time_s      %.4f\n", result.elapsed_s);
  std::printf("stop        %s\n", std::string(scn::to_string(result.stop)).c_str());
  return result.stop == scn::StopReason::Stalled ? kExitStalled : kExitOk;
}

struct EvalArgs {
  std::string model;
  std::string data;
};

int cmd_eval(const EvalArgs& a) {
  const scn::ModelFile file = scn::load_model(a.model);
  const scn::ScnModel& model = file.model;
  const scn::Dataset raw = scn::load_csv(a.data, model.output_dim());
  if (raw.input_dim() != model.input_dim()) {
    throw UsageError("data has " + std::to_string(raw.input_dim()) + " inputs, model expects " +
                     std::to_string(model.input_dim()));
  }
  const scn::Dataset ds = scn::apply_normalization(raw, model.norm_meta());
  const double err = scn::rmse(scn::predict_normalized(model, ds.x), ds.t);
  std::printf("rmse %.17g\n", err);
  return kExitOk;
}

struct BenchArgs {
  std::string suite = "db1";
  std::string out;
  scn::bench::Options opt;
};

int cmd_bench(const BenchArgs& a) {
  if (a.suite != "db1") throw UsageError("unknown suite '" + a.suite + "'");
  if (a.opt.trials < 1) throw UsageError("--trials must be >= 1");
  const auto data = scn::bench::prepare_db1(a.opt);
  const auto acc = scn::bench::accuracy_table(data, a.opt);
  scn::bench::print_accuracy(std::cout, acc);
  std::cout << "\n";
  const auto eff = scn::bench::efficiency_table(data, a.opt);
  scn::bench::print_efficiency(std::cout, eff, a.opt.epsilon);
  std::cout << "\n";
  const auto sweep = scn::bench::window_sweep(data, a.opt);
  scn::bench::print_sweep(std::cout, sweep, a.opt.sweep_l, a.opt.epsilon);
  if (!a.out.empty()) {
    fs::create_directories(a.out);
    scn::bench::write_accuracy_csv(fs::path(a.out) / "accuracy.csv", acc);
    scn::bench::write_efficiency_csv(fs::path(a.out) / "efficiency.csv", eff);
    scn::bench::write_sweep_csv(fs::path(a.out) / "window_sweep.csv", sweep);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic configuration networks: data generation, training, evaluation, benchmarks"};
  app.require_subcommand(1);
  std::string isa;
  app.add_option("--isa", isa, "Force kernel ISA (scalar, avx2, neon)");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-data", "Write train/test CSV files");
  gen_cmd->add_option("--out", gen.out, "Output directory")->capture_default_str();
  gen_cmd->add_option("--dataset", gen.dataset, "db1 or linear-sigmoid")->capture_default_str();
  gen_cmd->add_option("--n-train", gen.n_train, "Training rows")->capture_default_str()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--n-test", gen.n_test, "Test rows")->capture_default_str()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--dim", gen.dim, "Input dimension (linear-sigmoid)")->capture_default_str()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "Seed")->capture_default_str();

  TrainArgs tr;
  auto* train_cmd = app.add_subcommand("train", "Build a network from a CSV training set");
  train_cmd->add_option("--train", tr.train, "Training CSV")->required();
  train_cmd->add_option("--test", tr.test, "Test CSV");
  train_cmd->add_option("--targets", tr.targets, "Number of trailing target columns")->capture_default_str();
  train_cmd->add_option("--algorithm", tr.algorithm, "sc1, sc2, sc3 or irvfl")->capture_default_str();
  train_cmd->add_option("--l-max", tr.l_max, "Maximum hidden nodes")->capture_default_str();
  train_cmd->add_option("--epsilon", tr.epsilon, "Training error tolerance")->capture_default_str();
  train_cmd->add_option("--tolerance-scale", tr.tolerance_scale, "rmse or frobenius")->capture_default_str();
  train_cmd->add_option("--t-max", tr.t_max, "Candidates per scope round")->capture_default_str();
  train_cmd->add_option("--upsilon", tr.upsilon, "Comma-separated scope list (default 1,5,15,30,50,100,150,200)");
  train_cmd->add_option("--r0", tr.r0, "Initial contraction index")->capture_default_str();
  train_cmd->add_option("--window", tr.window, "SC-II window size K");
  train_cmd->add_option("--max-r-rounds", tr.max_r_rounds, "Maximum r growth rounds per node search")->capture_default_str();
  train_cmd->add_option("--search-order", tr.search_order, "contraction-first or scope-first")->capture_default_str();
  train_cmd->add_option("--tau-mode", tr.tau_mode, "half or random")->capture_default_str();
  train_cmd->add_option("--activation", tr.activation, "sigmoid, tanh, gaussian, sine, cosine")->capture_default_str();
  train_cmd->add_option("--seed", tr.seed, "Seed")->capture_default_str();
  train_cmd->add_option("--jobs", tr.jobs, "Threads for candidate scoring")->capture_default_str();
  train_cmd->add_option("--model-out", tr.model_out, "Model JSON output path");
  train_cmd->add_option("--report-out", tr.report_out, "Per-node CSV report path");

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "Report RMSE of a saved model on a CSV file");
  eval_cmd->add_option("--model", ev.model, "Model JSON")->required();
  eval_cmd->add_option("--data", ev.data, "CSV data")->required();

  BenchArgs bn;
  auto* bench_cmd = app.add_subcommand("bench", "Run the DB1 benchmark tables");
  bench_cmd->add_option("--suite", bn.suite, "Benchmark suite")->capture_default_str();
  bench_cmd->add_option("--trials", bn.opt.trials, "Independent trials per configuration")->capture_default_str();
  bench_cmd->add_option("--seed", bn.opt.seed, "Master seed")->capture_default_str();
  bench_cmd->add_option("--jobs", bn.opt.jobs, "Concurrent trials")->capture_default_str();
  bench_cmd->add_option("--out", bn.out, "Directory for CSV tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!isa.empty()) {
      bool found = false;
      for (auto candidate : {scn::kernels::Isa::Scalar, scn::kernels::Isa::Avx2, scn::kernels::Isa::Neon}) {
        if (scn::kernels::isa_name(candidate) == isa) {
          scn::kernels::set_active_isa(candidate);
          found = true;
        }
      }
      if (!found) throw UsageError("unknown ISA '" + isa + "'");
    }
    if (gen_cmd->parsed()) return cmd_gen_data(gen);
    if (train_cmd->parsed()) return cmd_train(tr);
    if (eval_cmd->parsed()) return cmd_eval(ev);
    if (bench_cmd->parsed()) return cmd_bench(bn);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
