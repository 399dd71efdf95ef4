#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "greedyrb/algorithms.hpp"
#include "greedyrb/distsolver.hpp"
#include "greedyrb/families.hpp"

namespace greedyrb {

// Configuration errors collect every problem with its JSON path; the CLI
// maps them to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(std::vector<std::string> problems);
  std::vector<std::string> problems;
};

struct SourceConfig {
  enum class Kind { family, random, snapshot, counterexample };
  Kind kind = Kind::family;
  // family
  std::string name;
  GridSpec grid;
  // random
  std::uint64_t seed = 0;
  int N_h = 1000;
  int d = 100;
  int N_tr = 1000;
  // snapshot
  std::string path;
  // counterexample
  double eps = 0.25;
  double alpha = 0.0;  // 0 means: derive from M >= 8
  int size = 12;
};

struct OpNormConfig {
  std::vector<int> dims;
  int restarts = 64;
  int samples = 10000;
};

struct OutputConfig {
  std::string dir = ".";
  bool csv = true;
  bool svg = false;
};

struct ExperimentConfig {
  SourceConfig source;
  SpaceSpec space = SpaceSpec::lp(2.0);
  std::vector<std::string> algorithms;  // subset of nga, oga, eim, pod
  int M = 30;
  int eval_stride = 3;
  std::optional<NoiseSpec> noise;
  GreedyConfig greedy;
  std::optional<OpNormConfig> opnorm;
  OutputConfig output;
  bool no_timing = false;  // zero the wall-dependent columns
};

ExperimentConfig parse_experiment_config(const nlohmann::json& doc);
ExperimentConfig load_experiment_config(const std::string& path);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

// Best-approximation errors of the whole training set against the first m
// basis vectors, solved per element by the distance solver.
struct ErrorEval {
  double error_avg = 0.0;
  double error_max = 0.0;
  int capped = 0;  // elements whose solve hit the iteration cap
};

ErrorEval evaluate_errors(const TrainingSet& ts, const ReducedBasis& basis,
                          int m, double tol);

// 1 / (error * cputime); +inf when the error is exactly zero.
double quality(double error, double cputime_s);

struct ReportRow {
  std::string algorithm;
  int m;
  double error_avg;
  double error_max;
  double cputime_s;
  double quality_avg;
  double quality_min;
};

struct NormTableRow {
  int n;
  double measured;     // max over 0 <= m < n of the measured |R_m| on V_n
  double theoretical;  // R^((n-1)/2)
};

struct ExperimentReport {
  std::vector<ReportRow> rows;
  std::vector<NormTableRow> norm_rows;
  nlohmann::json metadata;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

std::vector<NormTableRow> norm_table(const ReducedBasis& basis,
                                     const std::vector<int>& dims,
                                     int restarts, int samples,
                                     std::uint64_t seed);

// CSV emission; headers are fixed:
//   algorithm,m,error_avg,error_max,cputime_s,quality_avg,quality_min
//   n,measured_max_norm,theoretical_bound
std::string report_csv(const ExperimentReport& report);
std::string norm_table_csv(const std::vector<NormTableRow>& rows);

// Writes report.csv (+ normtable.csv, report.meta.json, SVG charts when
// requested) into cfg.output.dir. Returns the paths written.
std::vector<std::string> write_report(const ExperimentReport& report,
                                      const ExperimentConfig& cfg);

}  // namespace greedyrb
