#include "scn/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace scn::bench {
namespace {

std::string label(Algorithm a, std::size_t window) {
  switch (a) {
    case Algorithm::ScI: return "SC-I";
    case Algorithm::ScII: return "SC-II(K=" + std::to_string(window) + ")";
    case Algorithm::ScIII: return "SC-III";
    case Algorithm::Irvfl: return "IRVFL";
  }
  return "?";
}

std::string pm(const Stat& s, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f±%.*f", digits, s.mean, digits, s.std);
  return buf;
}

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.precision(10);
  return out;
}

constexpr Algorithm kSuite[] = {Algorithm::Irvfl, Algorithm::ScI, Algorithm::ScII, Algorithm::ScIII};

}  // namespace

Db1Data prepare_db1(const Options& opt) {
  auto [train_raw, test_raw] = gen_db1(opt.n_train, opt.n_test, opt.data_seed);
  auto [train, test] = normalize_pair(train_raw, test_raw);
  return {std::move(train), std::move(test)};
}

ScnConfig base_config(const Options& opt, Algorithm algorithm) {
  ScnConfig cfg;
  cfg.algorithm = algorithm;
  cfg.seed = opt.seed;
  cfg.window = algorithm == Algorithm::ScII ? opt.sc2_window : 0;
  if (algorithm == Algorithm::Irvfl) cfg.upsilon = {1.0};
  return cfg;
}

std::vector<AccuracyRow> accuracy_table(const Db1Data& data, const Options& opt) {
  std::vector<AccuracyRow> rows;
  for (Algorithm a : kSuite) {
    ScnConfig cfg = base_config(opt, a);
    cfg.l_max = 50;
    cfg.epsilon = 0.0;
    const TrialsReport rep = run_trials(data.train, cfg, opt.trials, &data.test, opt.jobs);
    rows.push_back({label(a, cfg.window), summarize_at(rep.runs, 25), summarize_at(rep.runs, 50)});
  }
  return rows;
}

std::vector<EfficiencyRow> efficiency_table(const Db1Data& data, const Options& opt) {
  std::vector<EfficiencyRow> rows;
  for (Algorithm a : kSuite) {
    ScnConfig cfg = base_config(opt, a);
    cfg.l_max = opt.efficiency_l_max;
    cfg.epsilon = opt.epsilon;
    const TrialsReport rep = run_trials(data.train, cfg, opt.trials, &data.test, opt.jobs);
    std::size_t max_nodes = 0;
    for (const auto& run : rep.runs) max_nodes = std::max(max_nodes, run.model.node_count());
    rows.push_back({label(a, cfg.window), rep.summary, max_nodes});
  }
  return rows;
}

std::vector<SweepRow> window_sweep(const Db1Data& data, const Options& opt) {
  std::vector<SweepRow> rows;
  for (std::size_t k : opt.sweep_windows) {
    ScnConfig cfg = base_config(opt, Algorithm::ScII);
    cfg.window = k;
    cfg.l_max = opt.sweep_l;
    cfg.epsilon = 0.0;
    const TrialsReport acc = run_trials(data.train, cfg, opt.trials, &data.test, opt.jobs);
    cfg.l_max = opt.efficiency_l_max;
    cfg.epsilon = opt.epsilon;
    const TrialsReport eff = run_trials(data.train, cfg, opt.trials, &data.test, opt.jobs);
    rows.push_back({k, acc.summary, eff.summary});
  }
  return rows;
}

void print_accuracy(std::ostream& out, const std::vector<AccuracyRow>& rows) {
  out << "Accuracy on DB1 (mean±std over trials)\n";
  out << "algorithm      | train L=25      | train L=50      | test L=25       | test L=50\n";
  for (const auto& r : rows) {
    char line[256];
    std::snprintf(line, sizeof line, "%-14s | %-15s | %-15s | %-15s | %s\n", r.algorithm.c_str(),
                  pm(r.at25.train_rmse).c_str(), pm(r.at50.train_rmse).c_str(),
                  pm(r.at25.test_rmse).c_str(), pm(r.at50.test_rmse).c_str());
    out << line;
  }
}

void print_efficiency(std::ostream& out, const std::vector<EfficiencyRow>& rows, double epsilon) {
  out << "Efficiency on DB1 (train RMSE tolerance " << epsilon << ")\n";
  out << "algorithm      | reached | time (s)        | nodes             | test RMSE\n";
  for (const auto& r : rows) {
    char line[256];
    std::snprintf(line, sizeof line, "%-14s | %3zu/%-3zu | %-15s | %-17s | %s\n", r.algorithm.c_str(),
                  r.summary.tolerance_met, r.summary.trials, pm(r.summary.time_s).c_str(),
                  pm(r.summary.nodes).c_str(), pm(r.summary.test_rmse).c_str());
    out << line;
  }
}

void print_sweep(std::ostream& out, const std::vector<SweepRow>& rows, std::size_t l, double epsilon) {
  out << "SC-II window sweep on DB1 (accuracy at L=" << l << ", efficiency at tolerance " << epsilon
      << ")\n";
  out << "K   | train           | test            | time (s) | nodes\n";
  for (const auto& r : rows) {
    char line[256];
    std::snprintf(line, sizeof line, "%-3zu | %-15s | %-15s | %8.4f | %.2f\n", r.window,
                  pm(r.accuracy.train_rmse).c_str(), pm(r.accuracy.test_rmse).c_str(),
                  r.efficiency.time_s.mean, r.efficiency.nodes.mean);
    out << line;
  }
}

void write_accuracy_csv(const std::filesystem::path& path, const std::vector<AccuracyRow>& rows) {
  auto out = open_csv(path);
  out << "algorithm,train25_mean,train25_std,train50_mean,train50_std,test25_mean,test25_std,"
         "test50_mean,test50_std\n";
  for (const auto& r : rows) {
    out << r.algorithm << ',' << r.at25.train_rmse.mean << ',' << r.at25.train_rmse.std << ','
        << r.at50.train_rmse.mean << ',' << r.at50.train_rmse.std << ',' << r.at25.test_rmse.mean << ','
        << r.at25.test_rmse.std << ',' << r.at50.test_rmse.mean << ',' << r.at50.test_rmse.std << '\n';
  }
}

void write_efficiency_csv(const std::filesystem::path& path, const std::vector<EfficiencyRow>& rows) {
  auto out = open_csv(path);
  out << "algorithm,trials,reached,time_mean,time_std,nodes_mean,nodes_std,max_nodes,test_mean,test_std\n";
  for (const auto& r : rows) {
    const auto& s = r.summary;
    out << r.algorithm << ',' << s.trials << ',' << s.tolerance_met << ',' << s.time_s.mean << ','
        << s.time_s.std << ',' << s.nodes.mean << ',' << s.nodes.std << ',' << r.max_nodes << ','
        << s.test_rmse.mean << ',' << s.test_rmse.std << '\n';
  }
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows) {
  auto out = open_csv(path);
  out << "K,train_mean,train_std,test_mean,test_std,time_mean,nodes_mean,reached\n";
  for (const auto& r : rows) {
    out << r.window << ',' << r.accuracy.train_rmse.mean << ',' << r.accuracy.train_rmse.std << ','
        << r.accuracy.test_rmse.mean << ',' << r.accuracy.test_rmse.std << ',' << r.efficiency.time_s.mean
        << ',' << r.efficiency.nodes.mean << ',' << r.efficiency.tolerance_met << '\n';
  }
}

}  // namespace scn::bench
