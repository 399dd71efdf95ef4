#include <doctest.h>

#include <Eigen/QR>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "greedyrb/experiments.hpp"
#include "greedyrb/theory.hpp"
#include "helpers.hpp"

using namespace greedyrb;
using nlohmann::json;

namespace {

json small_family_config() {
  return json::parse(R"({
    "source": {"kind": "family", "name": "1d",
               "spatial": [[-1.0, 1.0, 400]],
               "parametric": [[1.0, 3.14159, 30]]},
    "space": {"p": 2},
    "algorithms": ["nga", "oga", "pod"],
    "M": 9,
    "eval_stride": 3,
    "greedy": {"seed": 5},
    "output": {"dir": ".", "formats": ["csv"]}
  })");
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("evaluate_errors: empty cut, span membership, hilbert oracle") {
  const auto ts = gen_random_set(100, 30, 8, 20, SpaceSpec::lp(2));
  GreedyConfig cfg;
  cfg.max_iterations = 8;
  const auto r = run_nga(ts, cfg);

  const auto at_zero = evaluate_errors(ts, r.basis, 0, 1e-9);
  double max_norm = 0.0;
  for (int j = 0; j < ts.size(); ++j)
    max_norm = std::max(max_norm, ts.vectors.col(j).norm());
  CHECK(at_zero.error_max == doctest::Approx(max_norm));

  const auto full = evaluate_errors(ts, r.basis, 8, 1e-9);
  CHECK(full.error_max <= 1e-9 * max_norm);

  // explicit orthonormalization oracle at an intermediate cut
  const int m = 5;
  const auto eval = evaluate_errors(ts, r.basis, m, 1e-9);
  Eigen::HouseholderQR<Matrix> qr(r.basis.g.leftCols(m));
  const Matrix q = qr.householderQ() * Matrix::Identity(ts.dim(), m);
  double avg = 0.0, mx = 0.0;
  for (int j = 0; j < ts.size(); ++j) {
    const Vector f = ts.vectors.col(j);
    const double d = (f - q * (q.transpose() * f)).norm();
    avg += d;
    mx = std::max(mx, d);
  }
  avg /= ts.size();
  CHECK(eval.error_avg == doctest::Approx(avg).epsilon(1e-9));
  CHECK(eval.error_max == doctest::Approx(mx).epsilon(1e-9));
  CHECK_THROWS_AS(evaluate_errors(ts, r.basis, 9, 1e-9), std::out_of_range);
}

TEST_CASE("quality arithmetic") {
  CHECK(quality(0.5, 2.0) == doctest::Approx(1.0));
  CHECK(quality(1e-3, 10.0) == doctest::Approx(100.0));
  CHECK(std::isinf(quality(0.0, 2.0)));
}

TEST_CASE("config parsing rejects unknown keys and bad values") {
  auto doc = small_family_config();
  doc["surprise"] = 1;
  CHECK_THROWS_AS(parse_experiment_config(doc), ConfigError);

  doc = small_family_config();
  doc["algorithms"] = json::array();
  CHECK_THROWS_AS(parse_experiment_config(doc), ConfigError);

  doc = small_family_config();
  doc["algorithms"] = {"nga", "nga"};
  CHECK_THROWS_AS(parse_experiment_config(doc), ConfigError);

  doc = small_family_config();
  doc["space"] = {{"p", 0.5}};
  CHECK_THROWS_AS(parse_experiment_config(doc), ConfigError);

  doc = small_family_config();
  doc["source"]["name"] = "unknown";
  try {
    parse_experiment_config(doc);
    CHECK(false);
  } catch (const ConfigError& e) {
    REQUIRE(!e.problems.empty());
    CHECK(e.problems.front().find("$.source.name") != std::string::npos);
  }

  // valid config round-trips through its echo
  const auto cfg = parse_experiment_config(small_family_config());
  const auto echoed = parse_experiment_config(config_to_json(cfg));
  CHECK(echoed.M == cfg.M);
  CHECK(echoed.algorithms == cfg.algorithms);
  CHECK(config_to_json(echoed) == config_to_json(cfg));
}

TEST_CASE("run_experiment: row shape, monotone errors, hilbert coincidence") {
  auto doc = small_family_config();
  doc["no_timing"] = true;
  const auto cfg = parse_experiment_config(doc);
  const auto report = run_experiment(cfg);

  REQUIRE(report.rows.size() == 9);  // 3 algorithms x strides 3, 6, 9
  for (const auto& row : report.rows) {
    CHECK(row.error_avg <= row.error_max + 1e-15);
    CHECK(row.error_avg >= 0.0);
    CHECK(row.cputime_s == 0.0);
  }
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    if (report.rows[i].algorithm == report.rows[i - 1].algorithm)
      CHECK(report.rows[i].error_max <=
            report.rows[i - 1].error_max * (1.0 + 1e-9));
  }
  CHECK(report.metadata["selected"]["nga"] ==
        report.metadata["selected"]["oga"]);

  // at p = 2 the reported error_max at each stride equals the next trace
  // score (both are sigma_m)
  const auto ts =
      sample_family("1d", cfg.source.grid, SpaceSpec::lp(2));
  GreedyConfig greedy = cfg.greedy;
  greedy.max_iterations = cfg.M;
  const auto nga = run_nga(ts, greedy);
  for (const auto& row : report.rows) {
    if (row.algorithm != "nga") continue;
    if (row.m < nga.basis.size()) {
      CHECK(row.error_max ==
            doctest::Approx(nga.trace.rows[row.m].score).epsilon(1e-7));
    }
  }
}

TEST_CASE("csv emission uses the exact headers") {
  ExperimentReport report;
  report.rows.push_back({"nga", 3, 0.25, 0.5, 0.0, 0.0, 0.0});
  const std::string csv = report_csv(report);
  CHECK(csv.rfind(
            "algorithm,m,error_avg,error_max,cputime_s,quality_avg,"
            "quality_min\n", 0) == 0);
  CHECK(csv.find("nga,3,0.25,0.5,0,0,0\n") != std::string::npos);

  const std::string nt = norm_table_csv({{5, 1.25, 2.618}});
  CHECK(nt.rfind("n,measured_max_norm,theoretical_bound\n", 0) == 0);
  CHECK(nt.find("5,1.25,2.618") != std::string::npos);
}

TEST_CASE("zero-error rows print the inf sentinel") {
  ExperimentReport report;
  report.rows.push_back({"pod", 3, 0.0, 0.0, 1.5, quality(0.0, 1.5),
                         quality(0.0, 1.5)});
  const std::string csv = report_csv(report);
  CHECK(csv.find("pod,3,0,0,1.5,inf,inf") != std::string::npos);
}

TEST_CASE("norm table on an orthonormal basis") {
  const auto fixture = testutil::nga_fixture(SpaceSpec::lp(2), 6, 101);
  const auto rows = norm_table(fixture.basis, {2, 4, 6}, 8, 500, 1);
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) {
    CHECK(row.measured == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(row.measured >= 1.0 - 1e-12);
    CHECK(row.theoretical ==
          doctest::Approx(R_power_bound(row.n, SpaceSpec::lp(2))));
  }
}

TEST_CASE("deterministic reports for identical configs") {
  auto doc = small_family_config();
  doc["no_timing"] = true;
  doc["source"]["spatial"] = {{-1.0, 1.0, 200}};
  doc["source"]["parametric"] = {{1.0, 3.0, 12}};
  doc["M"] = 6;
  const auto cfg = parse_experiment_config(doc);
  const std::string a = report_csv(run_experiment(cfg));
  const std::string b = report_csv(run_experiment(cfg));
  CHECK(a == b);
}

TEST_CASE("experiment failures stay isolated per algorithm") {
  // eim on a counterexample source at p = 1 builds on the sup-norm view and
  // still produces rows; a pod request exceeding min(N_h, N_tr) errors the
  // whole config instead.
  auto doc = json::parse(R"({
    "source": {"kind": "counterexample", "eps": 0.25, "size": 12},
    "space": {"p": 1},
    "algorithms": ["nga", "eim"],
    "M": 6,
    "eval_stride": 3,
    "output": {"dir": ".", "formats": []},
    "no_timing": true
  })");
  const auto report = run_experiment(parse_experiment_config(doc));
  CHECK(report.rows.size() == 4);
  CHECK(report.metadata.contains("counterexample"));
  CHECK(report.metadata["eim_construction_space"] == "inf");

  auto bad = doc;
  bad["algorithms"] = {"pod"};
  bad["M"] = 60;
  CHECK_THROWS_AS(run_experiment(parse_experiment_config(bad)), ConfigError);
}

TEST_CASE("write_report emits the requested files") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "greedyrb_report_test";
  fs::remove_all(dir);

  auto doc = small_family_config();
  doc["no_timing"] = true;
  doc["source"]["spatial"] = {{-1.0, 1.0, 150}};
  doc["source"]["parametric"] = {{1.0, 3.0, 10}};
  doc["M"] = 4;
  doc["algorithms"] = {"nga"};
  doc["eval_stride"] = 2;
  doc["output"] = {{"dir", dir.string()}, {"formats", {"csv", "svg"}}};
  const auto cfg = parse_experiment_config(doc);
  const auto paths = write_report(run_experiment(cfg), cfg);

  CHECK(fs::exists(dir / "report.csv"));
  CHECK(fs::exists(dir / "report.meta.json"));
  CHECK(fs::exists(dir / "error_avg.svg"));
  CHECK(paths.size() >= 3);

  std::ifstream meta(dir / "report.meta.json");
  json parsed;
  meta >> parsed;
  CHECK(parsed["config"]["M"] == 4);
  CHECK(parsed["N_tr"] == 10);
  fs::remove_all(dir);
}

}  // TEST_SUITE
