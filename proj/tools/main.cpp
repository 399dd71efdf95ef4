// Command-line front end: experiment runs, the p = 2 and p = inf
// equivalence checks, the operator-norm table, the slow-convergence
// counterexample demo, and training-set generation.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "greedyrb/experiments.hpp"
#include "greedyrb/parallel.hpp"
#include "greedyrb/snapshot_io.hpp"

namespace {

using namespace greedyrb;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

SpaceSpec parse_p(const std::string& text) {
  if (text == "inf") return SpaceSpec::linf();
  double p = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), p);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw ConfigError({"--p: expected a number or 'inf'"});
  return SpaceSpec::from_p(p);
}

struct RunArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> M;
  std::string p;
  std::string out_dir;
  bool no_timing = false;
};

int cmd_run(const RunArgs& args, bool verbose) {
  ExperimentConfig cfg = load_experiment_config(args.config_path);
  if (args.seed) {
    cfg.greedy.seed = *args.seed;
    cfg.source.seed = *args.seed;
    if (cfg.noise) cfg.noise->seed = *args.seed;
  }
  if (args.M) cfg.M = *args.M;
  if (!args.p.empty()) cfg.space = parse_p(args.p);
  if (!args.out_dir.empty()) cfg.output.dir = args.out_dir;
  if (args.no_timing) cfg.no_timing = true;

  const ExperimentReport report = run_experiment(cfg);
  for (const auto& path : write_report(report, cfg))
    std::cout << "wrote " << path << "\n";
  if (report.metadata.contains("algorithm_errors")) {
    for (const auto& item : report.metadata["algorithm_errors"].items())
      std::cerr << "algorithm " << item.key()
                << " failed: " << item.value().get<std::string>() << "\n";
    return kExitNumerical;
  }
  if (verbose) std::cerr << report.metadata.dump(2) << "\n";
  return kExitOk;
}

int cmd_equiv(const std::string& p_text, std::uint64_t seed, int N_h, int d,
              int N_tr, int M) {
  const SpaceSpec space = parse_p(p_text);
  if (!(space.is_hilbert() || space.regime == SpaceSpec::Regime::linf))
    throw ConfigError({"--p: the equivalence checks exist for p = 2 and inf"});

  const TrainingSet ts = gen_random_set(seed, N_h, d, N_tr, space);
  GreedyConfig cfg;
  cfg.max_iterations = M;

  const GreedyResult nga = run_nga(ts, cfg);
  GreedyResult other;
  std::string other_name;
  if (space.is_hilbert()) {
    other = run_oga(ts, cfg);
    other_name = "oga";
  } else {
    other = run_eim(ts, cfg);
    other_name = "eim";
  }

  const int n = std::min(nga.basis.size(), other.basis.size());
  int index_mismatch = std::abs(nga.basis.size() - other.basis.size());
  for (int k = 0; k < n; ++k)
    if (nga.basis.selected[k] != other.basis.selected[k]) ++index_mismatch;

  double basis_gap = 0.0;
  double score_gap = 0.0;
  int point_mismatch = 0;
  for (int k = 0; k < n; ++k) {
    const Vector g = nga.basis.g.col(k);
    const Vector h = other.basis.g.col(k);
    basis_gap = std::max(basis_gap,
                         std::min((g - h).lpNorm<Eigen::Infinity>(),
                                  (g + h).lpNorm<Eigen::Infinity>()));
    const double denom = std::max(std::abs(nga.basis.scores[k]), 1e-300);
    score_gap = std::max(
        score_gap,
        std::abs(nga.basis.scores[k] - other.basis.scores[k]) / denom);
    if (space.regime == SpaceSpec::Regime::linf &&
        nga.basis.points[k] != other.basis.points[k])
      ++point_mismatch;
  }

  std::cout << "nga vs " << other_name << " on random data, p=" << space.str()
            << ", seed=" << seed << ", M=" << M << "\n"
            << "  selected index mismatches: " << index_mismatch << "\n";
  if (space.regime == SpaceSpec::Regime::linf)
    std::cout << "  interpolation point mismatches: " << point_mismatch
              << "\n";
  std::cout << "  max basis deviation (up to sign): " << fmt(basis_gap) << "\n"
            << "  max relative score deviation: " << fmt(score_gap) << "\n";

  const bool pass = index_mismatch == 0 && point_mismatch == 0 &&
                    basis_gap <= (space.is_hilbert() ? 1e-8 : 1e-9);
  std::cout << (pass ? "PASS\n" : "FAIL\n");
  return pass ? kExitOk : kExitNumerical;
}

int cmd_counterexample(double eps, int target_m, int size) {
  if (size <= target_m + 1) size = target_m + 4;
  const auto a = counterexample_default_a(size);
  const double alpha = counterexample_alpha_for(eps, a, target_m);
  const auto ce = counterexample_set(eps, a, alpha, size);

  GreedyConfig cfg;
  cfg.max_iterations = target_m;
  const GreedyResult nga = run_nga(ce.set, cfg);

  const Vector fstar = ce.set.vectors.col(0);
  const double fstar_norm = norm(fstar, ce.set.space);
  const double q = 2.0 * (1.0 - eps);

  std::cout << "eps=" << fmt(eps) << " alpha=" << fmt(alpha)
            << " threshold M=" << ce.threshold_M << " (a_n = 2^{-n/4})\n"
            << "m,measured_ratio,predicted,rel_err\n";
  bool pass = nga.basis.size() >= target_m;
  for (int m = 1; m <= std::min(target_m, nga.basis.size()); ++m) {
    const double measured =
        norm(apply_R(fstar, nga.basis, m), ce.set.space) / fstar_norm;
    const double predicted = std::pow(q, m);
    const double rel = std::abs(measured - predicted) / predicted;
    pass = pass && rel <= 1e-9;
    std::cout << m << ',' << fmt(measured) << ',' << fmt(predicted) << ','
              << fmt(rel) << "\n";
  }
  std::cout << (pass ? "PASS\n" : "FAIL\n");
  return pass ? kExitOk : kExitNumerical;
}

int cmd_normtable(const std::string& config_path, const std::string& dims_text,
                  int restarts, int samples) {
  ExperimentConfig cfg = load_experiment_config(config_path);
  std::vector<int> dims;
  std::size_t pos = 0;
  while (pos < dims_text.size()) {
    std::size_t comma = dims_text.find(',', pos);
    if (comma == std::string::npos) comma = dims_text.size();
    dims.push_back(std::stoi(dims_text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  if (dims.empty()) throw ConfigError({"--dims: empty"});

  cfg.opnorm = OpNormConfig{dims, restarts, samples};
  if (std::find(cfg.algorithms.begin(), cfg.algorithms.end(), "nga") ==
      cfg.algorithms.end())
    cfg.algorithms.push_back("nga");

  const ExperimentReport report = run_experiment(cfg);
  std::cout << norm_table_csv(report.norm_rows);
  for (const auto& path : write_report(report, cfg))
    std::cerr << "wrote " << path << "\n";
  return kExitOk;
}

struct GenArgs {
  std::string out_path;
  std::string family;
  bool random = false;
  std::uint64_t seed = 0;
  int N_h = 1000;
  int d = 100;
  int N_tr = 1000;
  std::string p = "2";
};

int cmd_gen(const GenArgs& args) {
  const SpaceSpec space = parse_p(args.p);
  std::optional<TrainingSet> ts;
  if (args.random) {
    ts = gen_random_set(args.seed, args.N_h, args.d, args.N_tr, space);
  } else if (!args.family.empty()) {
    ts = sample_family(args.family, family_info(args.family).default_grid,
                       space);
  } else {
    throw ConfigError({"gen: pass --family NAME or --random"});
  }
  const bool csv = args.out_path.size() > 4 &&
                   args.out_path.substr(args.out_path.size() - 4) == ".csv";
  if (csv)
    write_snapshots_csv(args.out_path, *ts);
  else
    write_snapshots_binary(args.out_path, *ts);
  std::cout << "wrote " << args.out_path << " (N_h=" << ts->dim()
            << ", N_tr=" << ts->size() << ", p=" << space.str() << ")\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reduced-basis construction toolkit for lp spaces"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "cap worker threads (1 = serial)")
      ->envname("GREEDY_RB_THREADS");
  bool verbose = false;
  app.add_flag("--verbose", verbose, "print metadata to stderr");

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "run an experiment from a JSON config");
  run->add_option("config", run_args.config_path, "config path")->required();
  std::uint64_t seed_override = 0;
  auto* seed_opt = run->add_option("--seed", seed_override,
                                   "override every seed in the config");
  int m_override = 0;
  auto* m_opt = run->add_option("--M", m_override,
                                "override the iteration budget");
  run->add_option("--p", run_args.p, "override the space exponent");
  run->add_option("--out", run_args.out_dir, "override the output directory");
  run->add_flag("--no-timing", run_args.no_timing,
                "zero the wall-dependent columns for byte-stable output");

  std::string equiv_p = "2";
  std::uint64_t equiv_seed = 0;
  int equiv_nh = 500, equiv_d = 50, equiv_ntr = 200, equiv_m = 15;
  auto* equiv = app.add_subcommand(
      "equiv", "check the p=2 nga/oga and p=inf nga/eim coincidences");
  equiv->add_option("--p", equiv_p, "2 or inf");
  equiv->add_option("--seed", equiv_seed, "data seed");
  equiv->add_option("--nh", equiv_nh, "ambient dimension");
  equiv->add_option("--d", equiv_d, "latent dimension");
  equiv->add_option("--ntr", equiv_ntr, "training set size");
  equiv->add_option("--M", equiv_m, "iterations");

  double ce_eps = 0.25;
  int ce_m = 8, ce_size = 0;
  auto* ce = app.add_subcommand(
      "counterexample",
      "slow-convergence set: measured residual growth vs (2(1-eps))^m");
  ce->add_option("--eps", ce_eps, "eps in (0, 1/2)");
  ce->add_option("--m", ce_m, "iterations to verify");
  ce->add_option("--size", ce_size, "set size (default m + 4)");

  std::string nt_config, nt_dims = "5,10,15,20,25,30";
  int nt_restarts = 64, nt_samples = 10000;
  auto* nt = app.add_subcommand(
      "normtable", "measured projector norms vs the R^((n-1)/2) bound");
  nt->add_option("config", nt_config, "experiment config")->required();
  nt->add_option("--dims", nt_dims, "comma-separated subspace dimensions");
  nt->add_option("--restarts", nt_restarts, "ascent restarts");
  nt->add_option("--samples", nt_samples, "random sampling floor");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "write a training set to file");
  gen->add_option("--out", gen_args.out_path, ".csv or binary path")
      ->required();
  gen->add_option("--family", gen_args.family, "family name");
  gen->add_flag("--random", gen_args.random, "random synthetic data");
  gen->add_option("--seed", gen_args.seed, "seed");
  gen->add_option("--nh", gen_args.N_h, "ambient dimension (random)");
  gen->add_option("--d", gen_args.d, "latent dimension (random)");
  gen->add_option("--ntr", gen_args.N_tr, "set size (random)");
  gen->add_option("--p", gen_args.p, "space exponent for the file header");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  if (threads > 0) greedyrb::set_max_threads(threads);

  try {
    if (run->parsed()) {
      if (seed_opt->count()) run_args.seed = seed_override;
      if (m_opt->count()) run_args.M = m_override;
      return cmd_run(run_args, verbose);
    }
    if (equiv->parsed())
      return cmd_equiv(equiv_p, equiv_seed, equiv_nh, equiv_d, equiv_ntr,
                       equiv_m);
    if (ce->parsed()) return cmd_counterexample(ce_eps, ce_m, ce_size);
    if (nt->parsed())
      return cmd_normtable(nt_config, nt_dims, nt_restarts, nt_samples);
    if (gen->parsed()) return cmd_gen(gen_args);
  } catch (const ConfigError& e) {
    for (const auto& p : e.problems)
      std::cerr << "config error: " << p << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}
