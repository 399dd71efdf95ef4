#include "greedyrb/experiments.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "greedyrb/parallel.hpp"
#include "greedyrb/snapshot_io.hpp"
#include "greedyrb/theory.hpp"
#include "svg_plot.hpp"

namespace greedyrb {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct Problems {
  std::vector<std::string> list;
  void add(const std::string& path, const std::string& what) {
    list.push_back(path + ": " + what);
  }
  void raise_if_any() const {
    if (!list.empty()) throw ConfigError(list);
  }
};

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& path, Problems& problems) {
  for (const auto& item : obj.items())
    if (!allowed.count(item.key()))
      problems.add(path + "." + item.key(), "unknown key");
}

double get_number(const json& obj, const char* key, double fallback,
                  const std::string& path, Problems& problems) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) {
    problems.add(path + "." + key, "expected a number");
    return fallback;
  }
  return obj[key].get<double>();
}

std::uint64_t get_seed(const json& obj, const char* key, std::uint64_t fallback,
                       const std::string& path, Problems& problems) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer() && !obj[key].is_number_unsigned()) {
    problems.add(path + "." + key, "expected an integer seed");
    return fallback;
  }
  return obj[key].get<std::uint64_t>();
}

std::vector<GridAxis> parse_axes(const json& arr, const std::string& path,
                                 Problems& problems) {
  std::vector<GridAxis> axes;
  if (!arr.is_array()) {
    problems.add(path, "expected an array of [min, max, count] triples");
    return axes;
  }
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& t = arr[i];
    const std::string apath = path + "[" + std::to_string(i) + "]";
    if (!t.is_array() || t.size() != 3 || !t[0].is_number() ||
        !t[1].is_number() || !t[2].is_number_integer()) {
      problems.add(apath, "expected [min, max, count]");
      continue;
    }
    axes.push_back({t[0].get<double>(), t[1].get<double>(), t[2].get<int>()});
  }
  return axes;
}

SpaceSpec parse_space(const json& obj, const std::string& path,
                      Problems& problems) {
  if (!obj.is_object() || !obj.contains("p")) {
    problems.add(path, "expected an object with key p");
    return SpaceSpec::lp(2.0);
  }
  check_keys(obj, {"p"}, path, problems);
  const auto& p = obj["p"];
  try {
    if (p.is_string()) {
      if (p.get<std::string>() == "inf") return SpaceSpec::linf();
      problems.add(path + ".p", "expected a number or \"inf\"");
    } else if (p.is_number()) {
      return SpaceSpec::from_p(p.get<double>());
    } else {
      problems.add(path + ".p", "expected a number or \"inf\"");
    }
  } catch (const std::exception& e) {
    problems.add(path + ".p", e.what());
  }
  return SpaceSpec::lp(2.0);
}

json space_to_json(const SpaceSpec& s) {
  json obj;
  switch (s.regime) {
    case SpaceSpec::Regime::l1: obj["p"] = 1; break;
    case SpaceSpec::Regime::linf: obj["p"] = "inf"; break;
    case SpaceSpec::Regime::lp: obj["p"] = s.p; break;
  }
  return obj;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems_)
    : std::runtime_error(problems_.empty() ? "invalid configuration"
                                           : problems_.front()),
      problems(std::move(problems_)) {}

ExperimentConfig parse_experiment_config(const json& doc) {
  Problems problems;
  ExperimentConfig cfg;
  if (!doc.is_object()) {
    problems.add("$", "configuration must be a JSON object");
    problems.raise_if_any();
  }
  check_keys(doc,
             {"source", "space", "algorithms", "M", "eval_stride", "noise",
              "greedy", "opnorm", "output", "no_timing"},
             "$", problems);

  if (!doc.contains("source") || !doc["source"].is_object()) {
    problems.add("$.source", "required object");
  } else {
    const auto& src = doc["source"];
    const std::string kind = src.value("kind", "");
    if (kind == "family") {
      check_keys(src, {"kind", "name", "spatial", "parametric"}, "$.source",
                 problems);
      cfg.source.kind = SourceConfig::Kind::family;
      cfg.source.name = src.value("name", "");
      bool known = false;
      for (const auto& info : family_registry())
        known = known || info.name == cfg.source.name;
      if (!known)
        problems.add("$.source.name",
                     "unknown family '" + cfg.source.name + "'");
      else
        cfg.source.grid = family_info(cfg.source.name).default_grid;
      if (src.contains("spatial"))
        cfg.source.grid.spatial =
            parse_axes(src["spatial"], "$.source.spatial", problems);
      if (src.contains("parametric"))
        cfg.source.grid.parametric =
            parse_axes(src["parametric"], "$.source.parametric", problems);
    } else if (kind == "random") {
      check_keys(src, {"kind", "seed", "N_h", "d", "N_tr"}, "$.source",
                 problems);
      cfg.source.kind = SourceConfig::Kind::random;
      cfg.source.seed = get_seed(src, "seed", 0, "$.source", problems);
      cfg.source.N_h =
          static_cast<int>(get_number(src, "N_h", 1000, "$.source", problems));
      cfg.source.d =
          static_cast<int>(get_number(src, "d", 100, "$.source", problems));
      cfg.source.N_tr = static_cast<int>(
          get_number(src, "N_tr", 1000, "$.source", problems));
    } else if (kind == "snapshot") {
      check_keys(src, {"kind", "path"}, "$.source", problems);
      cfg.source.kind = SourceConfig::Kind::snapshot;
      cfg.source.path = src.value("path", "");
      if (cfg.source.path.empty())
        problems.add("$.source.path", "required string");
    } else if (kind == "counterexample") {
      check_keys(src, {"kind", "eps", "alpha", "size"}, "$.source", problems);
      cfg.source.kind = SourceConfig::Kind::counterexample;
      cfg.source.eps = get_number(src, "eps", 0.25, "$.source", problems);
      cfg.source.alpha = get_number(src, "alpha", 0.0, "$.source", problems);
      cfg.source.size =
          static_cast<int>(get_number(src, "size", 12, "$.source", problems));
    } else {
      problems.add("$.source.kind",
                   "expected family | random | snapshot | counterexample");
    }
  }

  if (doc.contains("space"))
    cfg.space = parse_space(doc["space"], "$.space", problems);
  else
    problems.add("$.space", "required object");

  if (!doc.contains("algorithms") || !doc["algorithms"].is_array() ||
      doc["algorithms"].empty()) {
    problems.add("$.algorithms", "required non-empty array");
  } else {
    std::set<std::string> seen;
    for (const auto& a : doc["algorithms"]) {
      const std::string name = a.is_string() ? a.get<std::string>() : "";
      if (name != "nga" && name != "oga" && name != "eim" && name != "pod")
        problems.add("$.algorithms", "unknown algorithm '" + name + "'");
      else if (!seen.insert(name).second)
        problems.add("$.algorithms", "duplicate algorithm '" + name + "'");
      else
        cfg.algorithms.push_back(name);
    }
  }

  cfg.M = static_cast<int>(get_number(doc, "M", 30, "$", problems));
  if (cfg.M < 1) problems.add("$.M", "must be >= 1");
  cfg.eval_stride =
      static_cast<int>(get_number(doc, "eval_stride", 3, "$", problems));
  if (cfg.eval_stride < 1) problems.add("$.eval_stride", "must be >= 1");

  if (doc.contains("noise")) {
    const auto& nz = doc["noise"];
    check_keys(nz, {"mode", "fraction", "magnitude_ref", "seed"}, "$.noise",
               problems);
    NoiseSpec spec;
    const std::string mode = nz.value("mode", "coordinate_fraction");
    if (mode == "coordinate_fraction")
      spec.mode = NoiseSpec::Mode::coordinate_fraction;
    else if (mode == "indicator_shift")
      spec.mode = NoiseSpec::Mode::indicator_shift;
    else
      problems.add("$.noise.mode",
                   "expected coordinate_fraction | indicator_shift");
    spec.fraction = get_number(nz, "fraction", 0.0, "$.noise", problems);
    if (spec.fraction < 0.0 || spec.fraction > 1.0)
      problems.add("$.noise.fraction", "must lie in [0, 1]");
    const std::string ref = nz.value("magnitude_ref", "avg");
    if (ref == "avg")
      spec.magnitude_ref = NoiseSpec::Ref::avg;
    else if (ref == "max")
      spec.magnitude_ref = NoiseSpec::Ref::max;
    else
      problems.add("$.noise.magnitude_ref", "expected avg | max");
    spec.seed = get_seed(nz, "seed", 0, "$.noise", problems);
    cfg.noise = spec;
  }

  if (doc.contains("greedy")) {
    const auto& g = doc["greedy"];
    check_keys(g, {"weakness", "stop_rel", "oga_tol", "seed"}, "$.greedy",
               problems);
    cfg.greedy.weakness = get_number(g, "weakness", 1.0, "$.greedy", problems);
    if (!(cfg.greedy.weakness > 0.0 && cfg.greedy.weakness <= 1.0))
      problems.add("$.greedy.weakness", "must lie in (0, 1]");
    cfg.greedy.stop_rel = get_number(g, "stop_rel", 1e-13, "$.greedy", problems);
    cfg.greedy.oga_tol = get_number(g, "oga_tol", 1e-9, "$.greedy", problems);
    if (!(cfg.greedy.stop_rel > 0.0) || !(cfg.greedy.oga_tol > 0.0))
      problems.add("$.greedy", "tolerances must be positive");
    cfg.greedy.seed = get_seed(g, "seed", 0, "$.greedy", problems);
  }

  if (doc.contains("opnorm")) {
    const auto& op = doc["opnorm"];
    check_keys(op, {"dims", "restarts", "samples"}, "$.opnorm", problems);
    OpNormConfig c;
    if (!op.contains("dims") || !op["dims"].is_array() || op["dims"].empty()) {
      problems.add("$.opnorm.dims", "required non-empty integer array");
    } else {
      for (const auto& d : op["dims"]) {
        if (!d.is_number_integer() || d.get<int>() < 1)
          problems.add("$.opnorm.dims", "dims must be positive integers");
        else
          c.dims.push_back(d.get<int>());
      }
    }
    c.restarts =
        static_cast<int>(get_number(op, "restarts", 64, "$.opnorm", problems));
    c.samples =
        static_cast<int>(get_number(op, "samples", 10000, "$.opnorm", problems));
    cfg.opnorm = c;
  }

  if (doc.contains("output")) {
    const auto& out = doc["output"];
    check_keys(out, {"dir", "formats"}, "$.output", problems);
    cfg.output.dir = out.value("dir", ".");
    if (out.contains("formats")) {
      cfg.output.csv = false;
      cfg.output.svg = false;
      for (const auto& f : out["formats"]) {
        const std::string name = f.is_string() ? f.get<std::string>() : "";
        if (name == "csv")
          cfg.output.csv = true;
        else if (name == "svg")
          cfg.output.svg = true;
        else
          problems.add("$.output.formats", "expected csv | svg");
      }
    }
  }

  if (doc.contains("no_timing")) {
    if (!doc["no_timing"].is_boolean())
      problems.add("$.no_timing", "expected a boolean");
    else
      cfg.no_timing = doc["no_timing"].get<bool>();
  }

  if (cfg.source.kind == SourceConfig::Kind::counterexample &&
      cfg.space.regime != SpaceSpec::Regime::l1)
    problems.add("$.space", "counterexample source lives in p = 1");
  if (cfg.noise && cfg.noise->mode == NoiseSpec::Mode::indicator_shift) {
    if (cfg.source.kind != SourceConfig::Kind::family ||
        cfg.source.grid.spatial.size() != 1 ||
        cfg.source.grid.parametric.size() != 1)
      problems.add("$.noise.mode",
                   "indicator_shift needs a one-dimensional family source");
  }

  problems.raise_if_any();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({path + ": cannot open"});
  json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw ConfigError({path + ": " + e.what()});
  }
  return parse_experiment_config(doc);
}

json config_to_json(const ExperimentConfig& cfg) {
  json doc;
  json src;
  switch (cfg.source.kind) {
    case SourceConfig::Kind::family: {
      src["kind"] = "family";
      src["name"] = cfg.source.name;
      json spatial = json::array(), parametric = json::array();
      for (const auto& a : cfg.source.grid.spatial)
        spatial.push_back({a.min, a.max, a.count});
      for (const auto& a : cfg.source.grid.parametric)
        parametric.push_back({a.min, a.max, a.count});
      src["spatial"] = spatial;
      src["parametric"] = parametric;
      break;
    }
    case SourceConfig::Kind::random:
      src["kind"] = "random";
      src["seed"] = cfg.source.seed;
      src["N_h"] = cfg.source.N_h;
      src["d"] = cfg.source.d;
      src["N_tr"] = cfg.source.N_tr;
      break;
    case SourceConfig::Kind::snapshot:
      src["kind"] = "snapshot";
      src["path"] = cfg.source.path;
      break;
    case SourceConfig::Kind::counterexample:
      src["kind"] = "counterexample";
      src["eps"] = cfg.source.eps;
      src["alpha"] = cfg.source.alpha;
      src["size"] = cfg.source.size;
      break;
  }
  doc["source"] = src;
  doc["space"] = space_to_json(cfg.space);
  doc["algorithms"] = cfg.algorithms;
  doc["M"] = cfg.M;
  doc["eval_stride"] = cfg.eval_stride;
  if (cfg.noise) {
    json nz;
    nz["mode"] = cfg.noise->mode == NoiseSpec::Mode::coordinate_fraction
                     ? "coordinate_fraction"
                     : "indicator_shift";
    nz["fraction"] = cfg.noise->fraction;
    nz["magnitude_ref"] =
        cfg.noise->magnitude_ref == NoiseSpec::Ref::avg ? "avg" : "max";
    nz["seed"] = cfg.noise->seed;
    doc["noise"] = nz;
  }
  doc["greedy"] = {{"weakness", cfg.greedy.weakness},
                   {"stop_rel", cfg.greedy.stop_rel},
                   {"oga_tol", cfg.greedy.oga_tol},
                   {"seed", cfg.greedy.seed}};
  if (cfg.opnorm)
    doc["opnorm"] = {{"dims", cfg.opnorm->dims},
                     {"restarts", cfg.opnorm->restarts},
                     {"samples", cfg.opnorm->samples}};
  doc["output"] = {{"dir", cfg.output.dir}};
  json formats = json::array();
  if (cfg.output.csv) formats.push_back("csv");
  if (cfg.output.svg) formats.push_back("svg");
  doc["output"]["formats"] = formats;
  doc["no_timing"] = cfg.no_timing;
  return doc;
}

ErrorEval evaluate_errors(const TrainingSet& ts, const ReducedBasis& basis,
                          int m, double tol) {
  if (m < 0 || m > basis.size())
    throw std::out_of_range("evaluate_errors: m exceeds basis size");
  std::vector<double> dists(ts.size());
  std::vector<char> capped(ts.size(), 0);
  if (m == 0) {
    parallel_for(0, ts.size(), [&](std::int64_t j) {
      dists[j] = norm(ts.vectors.col(j), ts.space);
    });
  } else {
    DistOptions opt;
    opt.tol = tol;
    const DistanceSolver solver(basis.g.leftCols(m), ts.space, opt);
    parallel_for(0, ts.size(), [&](std::int64_t j) {
      const auto r = solver.solve(ts.vectors.col(j));
      dists[j] = r.dist;
      capped[j] = r.status == DistStatus::max_iter ? 1 : 0;
    });
  }
  ErrorEval eval;
  for (int j = 0; j < ts.size(); ++j) {
    eval.error_avg += dists[j];
    eval.error_max = std::max(eval.error_max, dists[j]);
    eval.capped += capped[j];
  }
  eval.error_avg /= ts.size();
  return eval;
}

double quality(double error, double cputime_s) {
  if (error == 0.0 || cputime_s == 0.0)
    return std::numeric_limits<double>::infinity();
  return 1.0 / (error * cputime_s);
}

std::vector<NormTableRow> norm_table(const ReducedBasis& basis,
                                     const std::vector<int>& dims,
                                     int restarts, int samples,
                                     std::uint64_t seed) {
  OpNormOptions opt;
  opt.restarts = restarts;
  opt.samples = samples;
  opt.seed = seed;
  std::vector<NormTableRow> rows;
  for (int n : dims) {
    if (n < 1 || n > basis.size())
      throw std::out_of_range("norm_table: dimension outside the basis");
    double measured = 1.0;  // the m = 0 term is exactly 1
    for (int m = 1; m < n; ++m)
      measured = std::max(measured, operator_norm(basis, m, n, opt).value);
    rows.push_back({n, measured, R_power_bound(n, basis.space)});
  }
  return rows;
}

namespace {

TrainingSet build_training_set(const ExperimentConfig& cfg, json& metadata) {
  switch (cfg.source.kind) {
    case SourceConfig::Kind::family:
      return sample_family(cfg.source.name, cfg.source.grid, cfg.space);
    case SourceConfig::Kind::random:
      return gen_random_set(cfg.source.seed, cfg.source.N_h, cfg.source.d,
                            cfg.source.N_tr, cfg.space);
    case SourceConfig::Kind::snapshot: {
      const bool csv =
          cfg.source.path.size() > 4 &&
          cfg.source.path.substr(cfg.source.path.size() - 4) == ".csv";
      TrainingSet ts = csv ? read_snapshots_csv(cfg.source.path, cfg.space)
                           : read_snapshots_binary(cfg.source.path);
      if (!(ts.space == cfg.space)) {
        metadata["warnings"].push_back(
            "snapshot file norm differs from the configured space; the "
            "configured space wins");
        ts.space = cfg.space;
      }
      return ts;
    }
    case SourceConfig::Kind::counterexample: {
      const auto a = counterexample_default_a(cfg.source.size);
      double alpha = cfg.source.alpha;
      if (alpha == 0.0) alpha = counterexample_alpha_for(cfg.source.eps, a, 8);
      auto ce = counterexample_set(cfg.source.eps, a, alpha, cfg.source.size);
      metadata["counterexample"] = {{"alpha", ce.alpha},
                                    {"threshold_M", ce.threshold_M}};
      return std::move(ce.set);
    }
  }
  throw ConfigError({"$.source.kind: unhandled source"});
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  ExperimentReport report;
  json& meta = report.metadata;
  meta["version"] = "0.1.0";
  meta["config"] = config_to_json(cfg);
  meta["warnings"] = json::array();

  TrainingSet ts = build_training_set(cfg, meta);
  if (cfg.noise) {
    const GridSpec* grid = cfg.source.kind == SourceConfig::Kind::family
                               ? &cfg.source.grid
                               : nullptr;
    ts = add_noise(ts, *cfg.noise, grid);
  }
  meta["N_h"] = static_cast<std::int64_t>(ts.dim());
  meta["N_tr"] = ts.size();

  for (const auto& name : cfg.algorithms) {
    if (name == "pod" && cfg.M > std::min<Eigen::Index>(ts.dim(), ts.size()))
      throw ConfigError({"$.M: pod requires M <= min(N_h, N_tr)"});
  }

  GreedyConfig greedy = cfg.greedy;
  greedy.max_iterations = cfg.M;

  std::map<std::string, GreedyResult> results;
  for (const auto& name : cfg.algorithms) {
    try {
      if (name == "nga") {
        results[name] = run_nga(ts, greedy);
      } else if (name == "oga") {
        results[name] = run_oga(ts, greedy);
      } else if (name == "eim") {
        if (ts.space.regime == SpaceSpec::Regime::linf) {
          results[name] = run_eim(ts, greedy);
        } else {
          // The interpolation construction is inherently a sup-norm
          // procedure; build on the sup-norm view, evaluate in the
          // experiment norm.
          TrainingSet view(ts.vectors, SpaceSpec::linf(), ts.label);
          view.column_labels = ts.column_labels;
          results[name] = run_eim(view, greedy);
          meta["eim_construction_space"] = "inf";
        }
      } else if (name == "pod") {
        results[name] = run_pod(ts, cfg.M);
      }
    } catch (const std::exception& e) {
      meta["algorithm_errors"][name] = e.what();
    }
  }

  json statuses = json::object();
  for (const auto& name : cfg.algorithms) {
    const auto it = results.find(name);
    if (it == results.end()) continue;
    const auto& [basis, trace] = it->second;
    for (const auto& w : trace.warnings)
      meta["warnings"].push_back(name + ": " + w);
    json selected = json::array();
    for (int idx : basis.selected) selected.push_back(idx);
    meta["selected"][name] = selected;

    int capped_total = 0;
    for (int m = cfg.eval_stride; m <= cfg.M; m += cfg.eval_stride) {
      const int mm = std::min(m, basis.size());
      const auto eval = evaluate_errors(ts, basis, mm, cfg.greedy.oga_tol);
      capped_total += eval.capped;
      double cpu = 0.0;
      if (!trace.rows.empty())
        cpu = trace.rows[std::min<std::size_t>(mm, trace.rows.size()) - 1]
                  .cputime_s;
      ReportRow row{name,
                    m,
                    eval.error_avg,
                    eval.error_max,
                    cpu,
                    quality(eval.error_avg, cpu),
                    quality(eval.error_max, cpu)};
      if (cfg.no_timing) {
        row.cputime_s = 0.0;
        row.quality_avg = 0.0;
        row.quality_min = 0.0;
      }
      report.rows.push_back(row);
    }
    statuses[name] = {{"solver_capped_elements", capped_total}};
  }
  meta["solver_statuses"] = statuses;

  if (cfg.opnorm) {
    const auto it = results.find("nga");
    if (it == results.end())
      throw ConfigError({"$.opnorm: the norm table needs the nga basis"});
    std::vector<int> dims;
    for (int n : cfg.opnorm->dims) {
      if (n <= it->second.basis.size())
        dims.push_back(n);
      else
        meta["warnings"].push_back("opnorm: dimension " + std::to_string(n) +
                                   " exceeds the basis, skipped");
    }
    report.norm_rows = norm_table(it->second.basis, dims, cfg.opnorm->restarts,
                                  cfg.opnorm->samples, cfg.greedy.seed);
    meta["opnorm"] = {{"restarts", cfg.opnorm->restarts},
                      {"samples", cfg.opnorm->samples}};
  }

  return report;
}

std::string report_csv(const ExperimentReport& report) {
  std::string out =
      "algorithm,m,error_avg,error_max,cputime_s,quality_avg,quality_min\n";
  for (const auto& r : report.rows) {
    out += r.algorithm;
    out += ',' + std::to_string(r.m);
    out += ',' + fmt_double(r.error_avg);
    out += ',' + fmt_double(r.error_max);
    out += ',' + fmt_double(r.cputime_s);
    out += ',' + fmt_double(r.quality_avg);
    out += ',' + fmt_double(r.quality_min);
    out += '\n';
  }
  return out;
}

std::string norm_table_csv(const std::vector<NormTableRow>& rows) {
  std::string out = "n,measured_max_norm,theoretical_bound\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n);
    out += ',' + fmt_double(r.measured);
    out += ',' + fmt_double(r.theoretical);
    out += '\n';
  }
  return out;
}

std::vector<std::string> write_report(const ExperimentReport& report,
                                      const ExperimentConfig& cfg) {
  namespace fs = std::filesystem;
  std::vector<std::string> written;
  fs::create_directories(cfg.output.dir);
  auto emit = [&](const std::string& name, const std::string& content) {
    const std::string path = (fs::path(cfg.output.dir) / name).string();
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
    written.push_back(path);
  };

  if (cfg.output.csv) {
    emit("report.csv", report_csv(report));
    if (!report.norm_rows.empty())
      emit("normtable.csv", norm_table_csv(report.norm_rows));
  }
  emit("report.meta.json", report.metadata.dump(2) + "\n");

  if (cfg.output.svg) {
    const char* metrics[] = {"error_avg", "error_max", "quality_avg",
                             "quality_min"};
    for (const char* metric : metrics) {
      std::map<std::string, detail::Series> per_algorithm;
      for (const auto& row : report.rows) {
        auto& s = per_algorithm[row.algorithm];
        s.name = row.algorithm;
        s.x.push_back(row.m);
        double v = 0.0;
        if (std::string(metric) == "error_avg") v = row.error_avg;
        if (std::string(metric) == "error_max") v = row.error_max;
        if (std::string(metric) == "quality_avg") v = row.quality_avg;
        if (std::string(metric) == "quality_min") v = row.quality_min;
        s.y.push_back(std::isfinite(v) ? v : 0.0);
      }
      std::vector<detail::Series> series;
      for (const auto& name : cfg.algorithms)
        if (per_algorithm.count(name)) series.push_back(per_algorithm[name]);
      emit(std::string(metric) + ".svg",
           detail::line_chart_svg(metric, "basis dimension m", series));
    }
  }
  return written;
}

}  // namespace greedyrb
