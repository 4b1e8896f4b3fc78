#include <doctest.h>

#include <cmath>

#include "scn/trainer.hpp"
#include "scn/weights.hpp"

using namespace scn;

namespace {

const Dataset& db1_train() {
  static const Dataset ds = [] {
    auto [train, test] = gen_db1(400, 50, 0);
    return normalize_pair(train, test).first;
  }();
  return ds;
}

ScnConfig small_config(Algorithm alg, std::size_t l_max = 15) {
  ScnConfig cfg;
  cfg.algorithm = alg;
  cfg.l_max = l_max;
  cfg.epsilon = 0.0;
  cfg.t_max = 50;
  cfg.seed = 4;
  if (alg == Algorithm::ScII) cfg.window = 5;
  if (alg == Algorithm::Irvfl) cfg.upsilon = {1.0};
  return cfg;
}

}  // namespace

TEST_SUITE("trainer") {
  TEST_CASE("a zero target needs no nodes") {
    Dataset ds;
    ds.x = Matrix::Random(20, 2);
    ds.t = Matrix::Zero(20, 1);
    ds.norm_meta = NormMeta::identity(2, 1);
    for (auto alg : {Algorithm::ScI, Algorithm::ScII, Algorithm::ScIII, Algorithm::Irvfl}) {
      ScnConfig cfg = small_config(alg);
      cfg.epsilon = 0.05;
      const TrainResult res = train(ds, cfg);
      CHECK(res.stop == StopReason::ToleranceMet);
      CHECK(res.model.node_count() == 0);
      CHECK(res.trace.records.empty());
      CHECK(res.final_train_rmse() == 0.0);
    }
  }

  TEST_CASE("SC-I residual contracts by at least r + mu per step") {
    const ScnConfig cfg = small_config(Algorithm::ScI, 25);
    std::size_t steps = 0;
    train(db1_train(), cfg, nullptr, [&](const StepEvent& ev) {
      const double before = ev.residual_before.squaredNorm();
      const double after = ev.residual_after.squaredNorm();
      CHECK(after <= (ev.r + ev.mu) * before + 1e-10);
      ++steps;
    });
    CHECK(steps == 25);
  }

  TEST_CASE("accepted nodes satisfy the inequality against the residual they were scored on") {
    for (auto alg : {Algorithm::ScI, Algorithm::ScII, Algorithm::ScIII}) {
      const ScnConfig cfg = small_config(alg);
      train(db1_train(), cfg, nullptr, [&](const StepEvent& ev) {
        double hh = 0.0;
        for (double v : ev.h) hh += v * v;
        for (Eigen::Index q = 0; q < ev.residual_before.cols(); ++q) {
          double eh = 0.0;
          for (Eigen::Index i = 0; i < ev.residual_before.rows(); ++i) eh += ev.residual_before(i, q) * ev.h[i];
          const double ee = ev.residual_before.col(q).squaredNorm();
          CHECK(eh * eh / hh - (1.0 - ev.r - ev.mu) * ee >= -1e-12 * ee);
        }
      });
    }
  }

  TEST_CASE("training error never increases") {
    for (auto alg : {Algorithm::ScI, Algorithm::ScII, Algorithm::ScIII, Algorithm::Irvfl}) {
      CAPTURE(to_string(alg));
      const TrainResult res = train(db1_train(), small_config(alg, 30));
      double prev = res.trace.initial_residual_frob;
      for (const auto& rec : res.trace.records) {
        CHECK(rec.train_residual_frob <= prev * (1.0 + 1e-9));
        prev = rec.train_residual_frob;
      }
    }
  }

  TEST_CASE("SC-II with a window at least L_max equals SC-III bitwise") {
    ScnConfig c2 = small_config(Algorithm::ScII, 12);
    c2.window = 12;
    const ScnConfig c3 = small_config(Algorithm::ScIII, 12);
    const TrainResult r2 = train(db1_train(), c2);
    const TrainResult r3 = train(db1_train(), c3);
    CHECK(r2.model.nodes() == r3.model.nodes());
    CHECK(r2.model.output_weights() == r3.model.output_weights());
    CHECK(r2.final_train_rmse() == r3.final_train_rmse());
  }

  TEST_CASE("on a shared node sequence the global fit dominates the window and constructive fits") {
    const TrainResult base = train(db1_train(), small_config(Algorithm::ScI, 20));
    const Matrix h = hidden_matrix(base.model.nodes(), db1_train().x);
    const Matrix& t = db1_train().t;
    const std::size_t k = 4;
    Matrix beta_win(0, 1);
    Matrix e_con = t;
    for (Eigen::Index l = 1; l <= h.cols(); ++l) {
      const auto hl = h.leftCols(l);
      const Vector col = h.col(l - 1);
      // Constructive step from the window path's own previous residual.
      const Matrix e_win_prev = t - h.leftCols(l - 1) * beta_win;
      const double greedy = e_win_prev.squaredNorm() -
                            std::pow(e_win_prev.col(0).dot(col), 2) / col.squaredNorm();
      beta_win = static_cast<std::size_t>(l) <= k
                     ? eval_global(hl, t)
                     : eval_window(hl, t, Matrix(beta_win.topRows(l - static_cast<Eigen::Index>(k))), k);
      const double e_win = (t - hl * beta_win).squaredNorm();
      const double e_glob = (t - hl * eval_global(hl, t)).squaredNorm();
      const auto b = eval_constructive(e_con, as_span(col));
      e_con -= col * b[0];
      CHECK(e_glob <= e_win * (1 + 1e-9) + 1e-12);
      CHECK(e_win <= greedy * (1 + 1e-9) + 1e-12);
      CHECK(e_glob <= e_con.squaredNorm() * (1 + 1e-9) + 1e-12);
    }
  }

  TEST_CASE("same seed, same model; different seed, different model") {
    for (auto alg : {Algorithm::ScI, Algorithm::ScII, Algorithm::ScIII, Algorithm::Irvfl}) {
      ScnConfig cfg = small_config(alg, 8);
      const TrainResult a = train(db1_train(), cfg);
      const TrainResult b = train(db1_train(), cfg);
      CHECK(a.model.nodes() == b.model.nodes());
      CHECK(a.model.output_weights() == b.model.output_weights());
      cfg.seed = 99;
      const TrainResult c = train(db1_train(), cfg);
      CHECK_FALSE(a.model.nodes() == c.model.nodes());
    }
  }

  TEST_CASE("parallel scoring gives the same model") {
    ScnConfig cfg = small_config(Algorithm::ScIII, 8);
    const TrainResult a = train(db1_train(), cfg);
    cfg.jobs = 4;
    const TrainResult b = train(db1_train(), cfg);
    CHECK(a.model.nodes() == b.model.nodes());
    CHECK(a.model.output_weights() == b.model.output_weights());
  }

  TEST_CASE("tolerance stops construction early") {
    ScnConfig cfg = small_config(Algorithm::ScIII, 50);
    cfg.epsilon = 0.05;
    const TrainResult res = train(db1_train(), cfg);
    CHECK(res.stop == StopReason::ToleranceMet);
    CHECK(res.final_train_rmse() <= 0.05);
    REQUIRE(res.trace.records.size() >= 2);
    CHECK(res.trace.records[res.trace.records.size() - 2].train_rmse > 0.05);

    cfg.tolerance_scale = ToleranceScale::Frobenius;
    cfg.epsilon = 0.05 * std::sqrt(static_cast<double>(db1_train().size()));
    const TrainResult frob = train(db1_train(), cfg);
    CHECK(frob.model.node_count() == res.model.node_count());
  }

  TEST_CASE("node budget bounds the model size") {
    const TrainResult res = train(db1_train(), small_config(Algorithm::ScI, 7));
    CHECK(res.stop == StopReason::NodeBudgetExhausted);
    CHECK(res.model.node_count() == 7);
    CHECK(res.trace.records.size() == 7);
    CHECK(res.trace.records.back().l == 7);
  }

  TEST_CASE("a stalled search ends construction with the nodes found so far") {
    Dataset ds;
    ds.x.resize(60, 1);
    ds.t.resize(60, 1);
    for (Eigen::Index i = 0; i < 60; ++i) {
      ds.x(i, 0) = static_cast<double>(i) / 59.0;
      ds.t(i, 0) = i % 2 == 0 ? 1.0 : -1.0;
    }
    ds.norm_meta = NormMeta::identity(1, 1);
    ScnConfig cfg = small_config(Algorithm::ScIII);
    cfg.upsilon = {1e-9};
    cfg.t_max = 1;
    cfg.max_r_rounds_per_lambda = 1;
    const TrainResult res = train(ds, cfg);
    CHECK(res.stop == StopReason::Stalled);
    CHECK(res.model.node_count() == 0);
  }

  TEST_CASE("test RMSE is traced when a test set is given") {
    auto [train_raw, test_raw] = gen_db1(300, 40, 2);
    auto [tr, te] = normalize_pair(train_raw, test_raw);
    const TrainResult res = train(tr, small_config(Algorithm::ScIII, 10), &te);
    for (const auto& rec : res.trace.records) CHECK(rec.test_rmse.has_value());
    CHECK(*res.final_test_rmse() == doctest::Approx(rmse(predict_normalized(res.model, te.x), te.t)).epsilon(1e-12));
  }

  TEST_CASE("the stored model reproduces the recorded training error") {
    for (auto alg : {Algorithm::ScI, Algorithm::ScII, Algorithm::ScIII, Algorithm::Irvfl}) {
      const TrainResult res = train(db1_train(), small_config(alg, 12));
      const double again = rmse(predict_normalized(res.model, db1_train().x), db1_train().t);
      CHECK(again == doctest::Approx(res.final_train_rmse()).epsilon(1e-10));
    }
  }

  TEST_CASE("mean_std") {
    const std::vector<double> one{3.0};
    CHECK(mean_std(one).mean == 3.0);
    CHECK(mean_std(one).std == 0.0);
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    CHECK(mean_std(v).mean == doctest::Approx(2.5));
    CHECK(mean_std(v).std == doctest::Approx(std::sqrt(5.0 / 3.0)));
  }

  TEST_CASE("run_trials derives distinct seeds and is independent of job count") {
    const ScnConfig cfg = small_config(Algorithm::ScI, 5);
    const TrialsReport serial = run_trials(db1_train(), cfg, 3, nullptr, 1);
    const TrialsReport parallel = run_trials(db1_train(), cfg, 3, nullptr, 3);
    REQUIRE(serial.runs.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(serial.runs[i].model.nodes() == parallel.runs[i].model.nodes());
    }
    CHECK_FALSE(serial.runs[0].model.nodes() == serial.runs[1].model.nodes());
    CHECK(serial.summary.trials == 3);
    CHECK(serial.summary.nodes.mean == 5.0);
    CHECK(trial_seed(1, 0) != trial_seed(1, 1));

    const TrialsReport single = run_trials(db1_train(), cfg, 1);
    CHECK(single.summary.train_rmse.std == 0.0);
  }

  TEST_CASE("summarize_at reads the trace at the requested size") {
    const TrialsReport rep = run_trials(db1_train(), small_config(Algorithm::ScI, 6), 2);
    const TrialsSummary at3 = summarize_at(rep.runs, 3);
    const double want = (rep.runs[0].trace.records[2].train_rmse + rep.runs[1].trace.records[2].train_rmse) / 2;
    CHECK(at3.train_rmse.mean == doctest::Approx(want).epsilon(1e-14));
    const TrialsSummary past = summarize_at(rep.runs, 100);
    CHECK(past.train_rmse.mean == doctest::Approx(rep.summary.train_rmse.mean).epsilon(1e-14));
  }
}
