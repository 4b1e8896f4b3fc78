#include <doctest.h>

#include <sstream>

#include "scn/model_io.hpp"
#include "temp_dir.hpp"

using namespace scn;
using scn::testing::TempDir;

namespace {

ModelFile trained_file() {
  auto [train_raw, test_raw] = gen_db1(300, 30, 1);
  auto [tr, te] = normalize_pair(train_raw, test_raw);
  ScnConfig cfg;
  cfg.l_max = 12;
  cfg.epsilon = 0.0;
  cfg.activation = ActivationKind::Tanh;
  const TrainResult res = train(tr, cfg);
  return {res.model,
          {std::string(to_string(cfg.algorithm)), cfg.seed, res.final_train_rmse(), std::string(to_string(res.stop))}};
}

}  // namespace

TEST_SUITE("model_io") {
  TEST_CASE("round trip preserves every parameter and prediction") {
    TempDir dir;
    const ModelFile file = trained_file();
    save_model(dir / "m.json", file);
    const ModelFile back = load_model(dir / "m.json");
    CHECK(back.summary == file.summary);
    CHECK(back.model.nodes() == file.model.nodes());
    CHECK(back.model.output_weights() == file.model.output_weights());
    CHECK(back.model.norm_meta() == file.model.norm_meta());
    Matrix x(1000, 1);
    for (Eigen::Index i = 0; i < 1000; ++i) x(i, 0) = -0.2 + 1.4 * static_cast<double>(i) / 999.0;
    CHECK(predict(back.model, x) == predict(file.model, x));
  }

  TEST_CASE("serialization is byte stable") {
    const ModelFile file = trained_file();
    const std::string a = model_to_json(file);
    CHECK(a == model_to_json(model_from_json(a)));
    CHECK(a == model_to_json(trained_file()));
  }

  TEST_CASE("a zero-node model round-trips") {
    const ModelFile file{ScnModel::empty(2, 1, NormMeta::identity(2, 1)), {"sc3", 1, 0.5, "stalled"}};
    const ModelFile back = model_from_json(model_to_json(file));
    CHECK(back.model.node_count() == 0);
    CHECK(predict(back.model, Matrix::Ones(3, 2)).isZero());
  }

  TEST_CASE("malformed files are rejected") {
    const std::string good = model_to_json(trained_file());
    CHECK_THROWS_AS(model_from_json("not json"), ModelFormatError);
    CHECK_THROWS_AS(model_from_json("{}"), ModelFormatError);
    std::string bad_version = good;
    bad_version.replace(bad_version.find("\"format_version\": 1"), 19, "\"format_version\": 9");
    CHECK_THROWS_AS(model_from_json(bad_version), ModelFormatError);
    std::string bad_act = good;
    bad_act.replace(bad_act.find("\"tanh\""), 6, "\"relu\"");
    CHECK_THROWS_AS(model_from_json(bad_act), ModelFormatError);
    TempDir dir;
    CHECK_THROWS(load_model(dir / "absent.json"));
  }

  TEST_CASE("report lists one row per node") {
    auto [train_raw, test_raw] = gen_db1(200, 20, 1);
    auto [tr, te] = normalize_pair(train_raw, test_raw);
    ScnConfig cfg;
    cfg.l_max = 4;
    cfg.epsilon = 0.0;
    const TrainResult res = train(tr, cfg, &te);
    std::ostringstream out;
    write_report(out, res.trace);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "L,train_rmse,test_rmse,r_at_acceptance,lambda_used,candidates_tried,elapsed_s");
    int rows = 0;
    while (std::getline(in, line)) {
      ++rows;
      CHECK(line.rfind(std::to_string(rows) + ",", 0) == 0);
    }
    CHECK(rows == 4);
  }
}
