#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "scn/model_io.hpp"
#include "temp_dir.hpp"

using scn::testing::read_text;
using scn::testing::TempDir;
using scn::testing::write_text;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run_cli(const TempDir& dir, const std::string& args) {
  const auto out = dir / "stdout.txt";
  const std::string cmd = std::string("\"") + SCN_CLI_PATH + "\" " + args + " > \"" + out.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return {WEXITSTATUS(status), read_text(out)};
}

std::size_t line_count(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

std::string q(const std::filesystem::path& p) { return "\"" + p.string() + "\""; }

std::vector<std::vector<std::string>> read_csv_cells(const std::filesystem::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(read_text(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

double value_after(const std::string& text, const std::string& key) {
  const auto pos = text.find(key);
  REQUIRE(pos != std::string::npos);
  return std::stod(text.substr(pos + key.size()));
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("gen-data writes the default DB1 split and is reproducible") {
    TempDir dir;
    REQUIRE(run_cli(dir, "gen-data --out " + q(dir / "a")).code == 0);
    REQUIRE(run_cli(dir, "gen-data --out " + q(dir / "b")).code == 0);
    const std::string train = read_text(dir / "a" / "train.csv");
    CHECK(line_count(train) == 1001);
    CHECK(line_count(read_text(dir / "a" / "test.csv")) == 301);
    CHECK(train == read_text(dir / "b" / "train.csv"));

    REQUIRE(run_cli(dir, "gen-data --n-train 10 --seed 4 --out " + q(dir / "c")).code == 0);
    CHECK(line_count(read_text(dir / "c" / "train.csv")) == 11);
    CHECK_FALSE(read_text(dir / "c" / "train.csv") == train);
  }

  TEST_CASE("usage errors exit with code 2") {
    TempDir dir;
    REQUIRE(run_cli(dir, "gen-data --n-train 50 --n-test 10 --out " + q(dir.path())).code == 0);
    const std::string train = q(dir / "train.csv");
    CHECK(run_cli(dir, "train --algorithm sc2 --train " + train).code == 2);
    CHECK(run_cli(dir, "train --algorithm bogus --train " + train).code == 2);
    CHECK(run_cli(dir, "train").code == 2);
    CHECK(run_cli(dir, "train --r0 1.5 --train " + train).code == 2);
    CHECK(run_cli(dir, "frobnicate").code == 2);
    CHECK(run_cli(dir, "--help").code == 0);
  }

  TEST_CASE("train is reproducible and eval matches the recorded training error") {
    TempDir dir;
    REQUIRE(run_cli(dir, "gen-data --n-train 300 --n-test 50 --out " + q(dir.path())).code == 0);
    const std::string base = "train --train " + q(dir / "train.csv") + " --test " + q(dir / "test.csv") +
                             " --algorithm sc2 --window 5 --l-max 15 --t-max 50 --seed 3";
    const Run first = run_cli(dir, base + " --model-out " + q(dir / "m1.json") + " --report-out " + q(dir / "r.csv"));
    REQUIRE(first.code == 0);
    CHECK(first.out.find("nodes") != std::string::npos);
    REQUIRE(run_cli(dir, base + " --model-out " + q(dir / "m2.json")).code == 0);
    const std::string m1 = read_text(dir / "m1.json");
    CHECK(m1 == read_text(dir / "m2.json"));
    CHECK(line_count(read_text(dir / "r.csv")) >= 2);

    const scn::ModelFile file = scn::load_model(dir / "m1.json");
    CHECK(file.summary.algorithm == "sc2");
    CHECK(file.summary.seed == 3);
    const Run ev = run_cli(dir, "eval --model " + q(dir / "m1.json") + " --data " + q(dir / "train.csv"));
    REQUIRE(ev.code == 0);
    std::istringstream in(ev.out);
    std::string label;
    double value = -1.0;
    in >> label >> value;
    CHECK(label == "rmse");
    CHECK(std::abs(value - file.summary.final_train_rmse) < 1e-9);
  }

  TEST_CASE("the scalar kernel path gives the same model as the default path") {
    TempDir dir;
    REQUIRE(run_cli(dir, "gen-data --n-train 200 --n-test 20 --out " + q(dir.path())).code == 0);
    const std::string base = "train --train " + q(dir / "train.csv") + " --l-max 10 --t-max 30";
    REQUIRE(run_cli(dir, base + " --model-out " + q(dir / "d.json")).code == 0);
    REQUIRE(run_cli(dir, "--isa scalar " + base + " --model-out " + q(dir / "s.json")).code == 0);
    const scn::ModelFile d = scn::load_model(dir / "d.json");
    const scn::ModelFile s = scn::load_model(dir / "s.json");
    CHECK(d.model.node_count() == s.model.node_count());
    CHECK(std::abs(d.summary.final_train_rmse - s.summary.final_train_rmse) < 1e-8);
  }

  TEST_CASE("a stalled run exits with code 3 and keeps the nodes found so far") {
    TempDir dir;
    std::ostringstream csv;
    for (int i = 0; i < 40; ++i) csv << i / 39.0 << "," << (i % 2 ? 1 : -1) << "\n";
    write_text(dir / "alt.csv", csv.str());
    const Run r = run_cli(dir, "train --train " + q(dir / "alt.csv") +
                                   " --upsilon 1e-9 --t-max 1 --max-r-rounds 1 --model-out " + q(dir / "m.json"));
    CHECK(r.code == 3);
    CHECK(r.out.find("stalled") != std::string::npos);
    const Run ev = run_cli(dir, "eval --model " + q(dir / "m.json") + " --data " + q(dir / "alt.csv"));
    CHECK(ev.code == 0);
    // Normalized targets alternate 0/1: a near-constant node fits the mean,
    // nothing narrow enough exists for the rest.
    const scn::ModelFile file = scn::load_model(dir / "m.json");
    CHECK(file.summary.stop_reason == "stalled");
    CHECK(file.model.node_count() == 1);
    CHECK(ev.out.find("rmse 0.4999999") != std::string::npos);
  }

  TEST_CASE("sc3 with default settings fits DB1 to about 0.01") {
    TempDir dir;
    REQUIRE(run_cli(dir, "gen-data --out " + q(dir.path())).code == 0);
    const Run r = run_cli(dir, "train --train " + q(dir / "train.csv") + " --test " + q(dir / "test.csv") +
                                   " --epsilon 0 --model-out " + q(dir / "m.json"));
    REQUIRE(r.code == 0);
    CHECK(value_after(r.out, "nodes") == 50);
    const double train_rmse = value_after(r.out, "train_rmse");
    CHECK(train_rmse <= 0.02);
    const Run ev = run_cli(dir, "eval --model " + q(dir / "m.json") + " --data " + q(dir / "test.csv"));
    REQUIRE(ev.code == 0);
    const double test_rmse = value_after(ev.out, "rmse");
    CHECK(test_rmse <= 0.02);
    CHECK(test_rmse == doctest::Approx(value_after(r.out, "test_rmse")).epsilon(1e-5));
  }

  TEST_CASE("bench with one trial writes three tables with zero spread") {
    TempDir dir;
    const Run r = run_cli(dir, "bench --trials 1 --out " + q(dir / "tables"));
    REQUIRE(r.code == 0);
    for (const char* name : {"accuracy.csv", "efficiency.csv", "window_sweep.csv"}) {
      CAPTURE(name);
      const auto rows = read_csv_cells(dir / "tables" / name);
      REQUIRE(rows.size() >= 2);
      for (std::size_t c = 0; c < rows[0].size(); ++c) {
        if (rows[0][c].size() < 4 || rows[0][c].substr(rows[0][c].size() - 4) != "_std") continue;
        for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][c]) == 0.0);
      }
    }
    const auto sweep = read_csv_cells(dir / "tables" / "window_sweep.csv");
    REQUIRE(sweep.size() == 8);
    for (std::size_t i = 1; i < sweep.size(); ++i) CHECK(std::stoi(sweep[i][0]) == static_cast<int>(5 * i));
    CHECK(std::stod(sweep.back()[1]) < std::stod(sweep[1][1]));
    CHECK(r.out.find("window sweep") != std::string::npos);
  }

  TEST_CASE("missing input files are reported as failures") {
    TempDir dir;
    CHECK(run_cli(dir, "train --train " + q(dir / "nope.csv")).code == 1);
    CHECK(run_cli(dir, "eval --model " + q(dir / "nope.json") + " --data " + q(dir / "nope.csv")).code == 1);
  }
}
