#include "greedyrb/algorithms.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "greedyrb/cputime.hpp"
#include "greedyrb/distsolver.hpp"
#include "greedyrb/parallel.hpp"

namespace greedyrb {

namespace {

void check_greedy_config(const GreedyConfig& cfg) {
  if (!(cfg.weakness > 0.0 && cfg.weakness <= 1.0))
    throw std::invalid_argument("greedy: weakness must lie in (0, 1]");
  if (!(cfg.stop_rel > 0.0) || !(cfg.oga_tol > 0.0))
    throw std::invalid_argument("greedy: tolerances must be positive");
  if (cfg.max_iterations < 0)
    throw std::invalid_argument("greedy: negative iteration cap");
}

// Weak selection rule: first index scanning ascending whose score reaches
// weakness * best. With weakness = 1 this is the lowest-index argmax.
int weak_select(const std::vector<double>& scores, double best,
                double weakness) {
  const double threshold = weakness * best;
  for (int j = 0; j < static_cast<int>(scores.size()); ++j)
    if (scores[j] >= threshold) return j;
  return -1;
}

std::vector<double> column_norms(const Matrix& m, const SpaceSpec& s) {
  std::vector<double> norms(m.cols());
  parallel_for(0, m.cols(),
               [&](std::int64_t j) { norms[j] = norm(m.col(j), s); });
  return norms;
}

}  // namespace

TrainingSet::TrainingSet(Matrix m, SpaceSpec s, std::string lbl)
    : vectors(std::move(m)), space(s), label(std::move(lbl)) {
  if (vectors.rows() == 0 || vectors.cols() == 0)
    throw std::invalid_argument("TrainingSet: empty snapshot matrix");
  if (!vectors.allFinite())
    throw std::invalid_argument("TrainingSet: non-finite coordinate");
}

IterationError::IterationError(int iteration_, int element_,
                               const std::string& what_)
    : std::runtime_error("iteration " + std::to_string(iteration_) +
                         ", element " + std::to_string(element_) + ": " +
                         what_),
      iteration(iteration_),
      element(element_) {}

GreedyResult run_nga(const TrainingSet& ts, const GreedyConfig& cfg) {
  check_greedy_config(cfg);
  const double t0 = cpu_time_seconds();
  const bool record_points = ts.space.regime == SpaceSpec::Regime::linf;

  GreedyResult out;
  out.basis.space = ts.space;
  out.basis.g.resize(ts.dim(), 0);

  ResidualCache cache(ts.vectors, ts.space);
  double tau0 = 0.0;
  for (int iter = 0; iter <= cfg.max_iterations; ++iter) {
    const auto scores = column_norms(cache.residuals, ts.space);
    double best = 0.0;
    for (double v : scores) best = std::max(best, v);
    if (iter == 0) tau0 = best;
    if (iter == cfg.max_iterations || best <= cfg.stop_rel * tau0) {
      out.trace.final_max_score = best;
      break;
    }
    const int pick = weak_select(scores, best, cfg.weakness);
    const Vector g = cache.residuals.col(pick) / scores[pick];

    out.basis.g.conservativeResize(Eigen::NoChange, iter + 1);
    out.basis.g.col(iter) = g;
    out.basis.selected.push_back(pick);
    out.basis.scores.push_back(scores[pick]);
    if (record_points)
      out.basis.points.push_back(static_cast<int>(peak_index(g)));
    update_cache(cache, g);
    out.trace.max_scores.push_back(best);
    out.trace.rows.push_back(
        {iter, pick, scores[pick], cpu_time_seconds() - t0});
  }
  return out;
}

GreedyResult run_oga(const TrainingSet& ts, const GreedyConfig& cfg) {
  check_greedy_config(cfg);
  const double t0 = cpu_time_seconds();

  GreedyResult out;
  out.basis.space = ts.space;
  out.basis.g.resize(ts.dim(), 0);

  DistOptions dist_opt;
  dist_opt.tol = cfg.oga_tol;

  std::vector<double> scores(ts.size());
  std::vector<Vector> coeffs(ts.size());
  double sigma0 = 0.0;
  for (int iter = 0; iter <= cfg.max_iterations; ++iter) {
    if (iter == 0) {
      const auto norms = column_norms(ts.vectors, ts.space);
      std::copy(norms.begin(), norms.end(), scores.begin());
      for (auto& c : coeffs) c = Vector(0);
    } else {
      try {
        const DistanceSolver solver(out.basis.g.leftCols(iter), ts.space,
                                    dist_opt);
        parallel_for(0, ts.size(), [&](std::int64_t j) {
          const auto r = solver.solve(ts.vectors.col(j));
          scores[j] = r.dist;
          coeffs[j] = r.coeffs;
        });
      } catch (const std::exception& e) {
        throw IterationError(iter, -1, e.what());
      }
    }
    double best = 0.0;
    for (double v : scores) best = std::max(best, v);
    if (iter == 0) sigma0 = best;
    if (iter == cfg.max_iterations || best <= cfg.stop_rel * sigma0) {
      out.trace.final_max_score = best;
      break;
    }
    const int pick = weak_select(scores, best, cfg.weakness);

    Vector residual = ts.vectors.col(pick);
    if (iter > 0) residual -= out.basis.g.leftCols(iter) * coeffs[pick];
    const double rnorm = norm(residual, ts.space);
    if (!(rnorm > 0.0))
      throw IterationError(iter, pick, "zero projection residual");

    out.basis.g.conservativeResize(Eigen::NoChange, iter + 1);
    out.basis.g.col(iter) = residual / rnorm;
    out.basis.selected.push_back(pick);
    out.basis.scores.push_back(scores[pick]);
    out.trace.max_scores.push_back(best);
    out.trace.rows.push_back(
        {iter, pick, scores[pick], cpu_time_seconds() - t0});
  }
  return out;
}

GreedyResult run_eim(const TrainingSet& ts, const GreedyConfig& cfg) {
  check_greedy_config(cfg);
  if (ts.space.regime != SpaceSpec::Regime::linf)
    throw std::domain_error("run_eim: training set must carry the sup norm");
  const double t0 = cpu_time_seconds();

  GreedyResult out;
  out.basis.space = ts.space;
  out.basis.g.resize(ts.dim(), 0);

  Matrix residuals = ts.vectors;  // f - I_n(f) per column
  double tau0 = 0.0;
  for (int iter = 0; iter <= cfg.max_iterations; ++iter) {
    const auto scores = column_norms(residuals, ts.space);
    double best = 0.0;
    for (double v : scores) best = std::max(best, v);
    if (iter == 0) tau0 = best;
    if (iter == cfg.max_iterations || best <= cfg.stop_rel * tau0) {
      out.trace.final_max_score = best;
      break;
    }
    const int pick = weak_select(scores, best, cfg.weakness);
    const Eigen::Index z = peak_index(residuals.col(pick));
    const double pivot = residuals(z, pick);
    if (!(std::abs(pivot) > 0.0))
      throw IterationError(iter, pick, "singular interpolation pivot");
    const Vector h = residuals.col(pick) / pivot;  // h(z) = 1, |h|_inf = 1

    out.basis.g.conservativeResize(Eigen::NoChange, iter + 1);
    out.basis.g.col(iter) = h;
    out.basis.selected.push_back(pick);
    out.basis.scores.push_back(scores[pick]);
    out.basis.points.push_back(static_cast<int>(z));

    // hierarchical interpolant update: r <- r - r(z) h keeps the match at
    // all previously chosen coordinates and zeroes the new one
    const Eigen::RowVectorXd row = residuals.row(z);
    parallel_for(0, residuals.cols(), [&](std::int64_t j) {
      residuals.col(j).noalias() -= row[j] * h;
    });
    out.trace.max_scores.push_back(best);
    out.trace.rows.push_back(
        {iter, pick, scores[pick], cpu_time_seconds() - t0});
  }
  return out;
}

GreedyResult run_pod(const TrainingSet& ts, int M, std::int64_t dense_budget) {
  if (M < 0 || M > std::min<Eigen::Index>(ts.dim(), ts.size()))
    throw std::invalid_argument("run_pod: M exceeds min(N_h, N_tr)");
  const double t0 = cpu_time_seconds();

  GreedyResult out;
  out.basis.space = SpaceSpec::lp(2.0);
  out.basis.g.resize(ts.dim(), 0);

  Matrix u;
  Vector sigma;
  const std::int64_t entries =
      static_cast<std::int64_t>(ts.dim()) * ts.size();
  if (entries <= dense_budget) {
    Eigen::BDCSVD<Matrix> svd(ts.vectors, Eigen::ComputeThinU);
    u = svd.matrixU();
    sigma = svd.singularValues();
  } else {
    // Gram-matrix route: eigenvectors of F^T F give the right singular
    // vectors, left ones recovered as F v / sigma
    out.trace.warnings.push_back(
        "pod: snapshot matrix above dense budget, using gram eigensolve");
    const Matrix gram = ts.vectors.transpose() * ts.vectors;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
    const int k = static_cast<int>(gram.rows());
    sigma.resize(k);
    u.resize(ts.dim(), k);
    for (int i = 0; i < k; ++i) {  // eigenvalues come back ascending
      const double lambda = std::max(0.0, eig.eigenvalues()[k - 1 - i]);
      sigma[i] = std::sqrt(lambda);
      if (sigma[i] > 0.0)
        u.col(i).noalias() = ts.vectors * eig.eigenvectors().col(k - 1 - i) /
                             sigma[i];
      else
        u.col(i).setZero();
    }
  }

  const double rank_tol = static_cast<double>(std::max(ts.dim(),
                          static_cast<Eigen::Index>(ts.size()))) *
                          std::numeric_limits<double>::epsilon() *
                          (sigma.size() ? sigma[0] : 0.0);
  int keep = 0;
  while (keep < M && keep < sigma.size() && sigma[keep] > rank_tol) ++keep;
  if (keep < M)
    out.trace.warnings.push_back("pod: requested " + std::to_string(M) +
                                 " vectors, rank is " + std::to_string(keep));

  out.basis.g.resize(ts.dim(), keep);
  for (int k = 0; k < keep; ++k) {
    out.basis.g.col(k) = u.col(k);
    out.basis.scores.push_back(sigma[k]);
    out.trace.rows.push_back({k, -1, sigma[k], cpu_time_seconds() - t0});
  }
  return out;
}

Vector eim_interpolation_coeffs(const ReducedBasis& basis, const Vector& f,
                                int n) {
  if (n < 0 || n > basis.size() ||
      n > static_cast<int>(basis.points.size()))
    throw std::out_of_range("eim_interpolation_coeffs: n out of range");
  Vector beta(n);
  for (int k = 0; k < n; ++k) {
    double acc = f[basis.points[k]];
    for (int j = 0; j < k; ++j)
      acc -= beta[j] * basis.g(basis.points[k], j);
    beta[k] = acc;  // h_k(z_k) = 1
  }
  return beta;
}

}  // namespace greedyrb
