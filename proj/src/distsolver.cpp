#include "greedyrb/distsolver.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "greedyrb/rng.hpp"
#include "simplex.hpp"

namespace greedyrb {

namespace {

// Objective callback: value and gradient at alpha. Returns the value.
using ValueGrad = std::function<double(const Vector&, Vector&)>;

struct MinimizeOutcome {
  int iterations = 0;
  bool converged = false;
};

// Compact L-BFGS (history 10) with Armijo backtracking. Monotone: a step is
// accepted only when it decreases the objective. Stops on a relative
// objective decrease below tol or a vanishing gradient.
MinimizeOutcome lbfgs_minimize(const ValueGrad& fg, Vector& x, double tol,
                               int max_iter,
                               std::vector<double>* objective_trace) {
  const int n = static_cast<int>(x.size());
  const int history = 10;
  std::vector<Vector> s_list, y_list;
  std::vector<double> rho_list;

  Vector grad(n), grad_new(n);
  double value = fg(x, grad);
  if (objective_trace) objective_trace->push_back(value);

  MinimizeOutcome out;
  for (int iter = 0; iter < max_iter; ++iter) {
    const double gnorm = grad.lpNorm<Eigen::Infinity>();
    if (gnorm <= 1e-14 * std::max(1.0, std::abs(value))) {
      out.converged = true;
      return out;
    }

    // two-loop recursion
    Vector q = grad;
    const int k = static_cast<int>(s_list.size());
    std::vector<double> a(k);
    for (int i = k - 1; i >= 0; --i) {
      a[i] = rho_list[i] * s_list[i].dot(q);
      q -= a[i] * y_list[i];
    }
    if (k > 0) {
      const double gamma =
          s_list.back().dot(y_list.back()) / y_list.back().squaredNorm();
      q *= gamma;
    }
    for (int i = 0; i < k; ++i) {
      const double b = rho_list[i] * y_list[i].dot(q);
      q += (a[i] - b) * s_list[i];
    }
    Vector dir = -q;
    double slope = grad.dot(dir);
    if (slope >= 0.0) {  // fall back to steepest descent
      dir = -grad;
      slope = -grad.squaredNorm();
    }

    // Armijo backtracking
    double step = 1.0;
    double value_new = value;
    Vector x_new;
    bool accepted = false;
    for (int bt = 0; bt < 50; ++bt) {
      x_new = x + step * dir;
      value_new = fg(x_new, grad_new);
      if (value_new <= value + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    ++out.iterations;
    if (!accepted) {
      out.converged = true;  // no descent possible numerically
      return out;
    }

    Vector s = x_new - x;
    Vector y = grad_new - grad;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      s_list.push_back(std::move(s));
      y_list.push_back(std::move(y));
      rho_list.push_back(1.0 / sy);
      if (static_cast<int>(s_list.size()) > history) {
        s_list.erase(s_list.begin());
        y_list.erase(y_list.begin());
        rho_list.erase(rho_list.begin());
      }
    }

    const double decrease = value - value_new;
    x = std::move(x_new);
    grad = grad_new;
    value = value_new;
    if (objective_trace) objective_trace->push_back(value);
    if (decrease <= tol * std::max(1e-300, std::abs(value))) {
      out.converged = true;
      return out;
    }
  }
  return out;
}

// d|r|_p / dr for the exact smooth norm; requires r != 0
Vector smooth_norm_grad(const Vector& r, double p, double nrm) {
  Vector g(r.size());
  if (p == 2.0) {
    g = r / nrm;
    return g;
  }
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    const double t = std::abs(r[i]) / nrm;
    g[i] = (r[i] > 0 ? 1.0 : (r[i] < 0 ? -1.0 : 0.0)) * std::pow(t, p - 1.0);
  }
  return g;
}

}  // namespace

DistanceSolver::DistanceSolver(const Matrix& basis, SpaceSpec space,
                               DistOptions opt)
    : basis_(basis), col_scale_(basis.cols()), space_(space), opt_(opt) {
  // Unit-l2 columns make the solve invariant under rescaling of the basis
  // vectors: the subspace, not its representation, determines the result.
  for (Eigen::Index j = 0; j < basis_.cols(); ++j) {
    col_scale_[j] = basis_.col(j).norm();
    if (col_scale_[j] == 0.0)
      throw std::domain_error("distance: rank-deficient basis");
    basis_.col(j) /= col_scale_[j];
  }
  if (basis_.cols() > 0) {
    qr_.compute(basis_);
    if (basis_.rows() < basis_.cols() ||
        qr_.rank() < static_cast<Eigen::Index>(basis_.cols()))
      throw std::domain_error("distance: rank-deficient basis");
  }
}

DistResult DistanceSolver::solve(const Vector& f) const {
  if (basis_.cols() > 0 && f.size() != basis_.rows())
    throw std::invalid_argument("distance: dimension mismatch");

  DistResult result;
  if (basis_.cols() == 0) {
    result.dist = norm(f, space_);
    result.coeffs = Vector(0);
    return result;
  }

  const int n = static_cast<int>(basis_.cols());
  Vector alpha = qr_.solve(f);  // l2 warm start for every p

  if (space_.is_hilbert()) {
    result.dist = (f - basis_ * alpha).norm();
    result.coeffs = alpha.cwiseQuotient(col_scale_);
    return result;
  }

  const double coord_scale =
      std::max(f.lpNorm<Eigen::Infinity>(),
               (f - basis_ * alpha).lpNorm<Eigen::Infinity>());
  if (coord_scale == 0.0) {
    result.coeffs = alpha.cwiseQuotient(col_scale_);
    result.dist = 0.0;
    return result;
  }

  if (space_.is_smooth()) {
    const double p = space_.p;
    auto fg = [&](const Vector& a, Vector& grad) {
      const Vector r = f - basis_ * a;
      const double nrm = norm(r, space_);
      if (nrm <= 1e-15 * coord_scale) {
        grad.setZero(n);
        return nrm;
      }
      grad.noalias() = -basis_.transpose() * smooth_norm_grad(r, p, nrm);
      return nrm;
    };
    const auto out = lbfgs_minimize(fg, alpha, opt_.tol, opt_.max_iter,
                                    opt_.objective_trace);
    result.dist = norm(f - basis_ * alpha, space_);
    result.coeffs = alpha.cwiseQuotient(col_scale_);
    result.iterations = out.iterations;
    result.status = out.converged ? DistStatus::converged : DistStatus::max_iter;
    return result;
  }

  // p in {1, inf}
  if (opt_.lp_threshold_nh > 0 && f.size() <= opt_.lp_threshold_nh && n <= 8) {
    DistResult lp = distance_oracle_lp(f, basis_, space_);
    lp.coeffs = lp.coeffs.cwiseQuotient(col_scale_);
    return lp;
  }

  // decreasing schedule 1e-2 * 4^-k down to 1e-10, relative to the
  // coordinate scale of the data; every stage warm-starts the next
  std::vector<double> stage_eps;
  for (double e = 1e-2; e > 1e-10; e /= 4.0) stage_eps.push_back(e);
  stage_eps.push_back(1e-10);

  int total_iterations = 0;
  bool last_converged = true;

  if (space_.regime == SpaceSpec::Regime::l1) {
    // Damped Newton on the smoothed objective sum(sqrt(r^2 + eps^2) - eps),
    // with an IRLS (majorize-minimize) step as the safeguarded fallback.
    // Newton contracts quadratically once the active coordinates settle,
    // which keeps the per-stage iteration count small even at tight eps.
    Vector r = f - basis_ * alpha;
    double exact_prev = r.lpNorm<1>();
    Matrix scaled(basis_.rows(), n);  // scratch for the weighted basis
    for (double e : stage_eps) {
      const double eps = e * coord_scale;
      auto objective_of = [&](const Vector& res) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < res.size(); ++i)
          acc += std::sqrt(res[i] * res[i] + eps * eps) - eps;
        return acc;
      };
      double objective = objective_of(r);
      if (opt_.objective_trace) opt_.objective_trace->push_back(objective);
      last_converged = false;
      for (int iter = 0; iter < opt_.max_iter; ++iter) {
        Vector root(r.size());
        for (Eigen::Index i = 0; i < r.size(); ++i)
          root[i] = std::sqrt(r[i] * r[i] + eps * eps);
        // gradient in alpha: -G^T (r / root)
        const Vector grad = -basis_.transpose() * r.cwiseQuotient(root);
        // hessian: G^T diag(eps^2 / root^3) G, assembled column-wise into
        // a preallocated scratch to keep the hot loop allocation free
        Vector sqrt_w(r.size());
        for (Eigen::Index i = 0; i < r.size(); ++i)
          sqrt_w[i] = eps / std::pow(root[i], 1.5);
        for (int j = 0; j < n; ++j)
          scaled.col(j).noalias() = basis_.col(j).cwiseProduct(sqrt_w);
        Matrix hess = Matrix::Zero(n, n);
        hess.selfadjointView<Eigen::Lower>().rankUpdate(scaled.transpose());
        hess.diagonal().array() +=
            1e-14 * hess.diagonal().maxCoeff() + 1e-300;
        Vector dir = Matrix(hess.selfadjointView<Eigen::Lower>())
                         .ldlt()
                         .solve(-grad);
        double slope = grad.dot(dir);
        if (!(slope < 0.0)) {
          // fall back to the IRLS step, which minimizes the quadratic
          // majorizer and therefore cannot increase the objective
          Vector irls_w = root.cwiseSqrt().cwiseInverse();
          for (int j = 0; j < n; ++j)
            scaled.col(j).noalias() = basis_.col(j).cwiseProduct(irls_w);
          Matrix normal = Matrix::Zero(n, n);
          normal.selfadjointView<Eigen::Lower>().rankUpdate(scaled.transpose());
          const Vector target =
              scaled.transpose() * irls_w.cwiseProduct(f);
          dir = normal.selfadjointView<Eigen::Lower>().llt().solve(target) -
                alpha;
          slope = grad.dot(dir);
          if (!(slope < 0.0)) {
            last_converged = true;
            break;
          }
        }
        const Vector step_dir = basis_ * dir;  // one GEMV per iteration
        double step = 1.0;
        double obj_new = objective;
        Vector r_new;
        bool accepted = false;
        for (int bt = 0; bt < 40; ++bt) {
          r_new = r - step * step_dir;
          obj_new = objective_of(r_new);
          if (obj_new <= objective + 1e-4 * step * slope) {
            accepted = true;
            break;
          }
          step *= 0.5;
        }
        ++total_iterations;
        if (!accepted) {
          last_converged = true;  // no representable decrease
          break;
        }
        alpha += step * dir;
        r = std::move(r_new);
        const double decrease = objective - obj_new;
        objective = obj_new;
        if (opt_.objective_trace) opt_.objective_trace->push_back(objective);
        if (decrease <= opt_.tol * std::max(1e-300, objective)) {
          last_converged = true;
          break;
        }
      }
      // ladder early exit once the exact norm has stopped moving
      const double exact = r.lpNorm<1>();
      if (std::abs(exact_prev - exact) <=
              0.1 * opt_.tol * std::max(1e-300, exact) &&
          eps <= 1e-6 * coord_scale) {
        last_converged = true;
        break;
      }
      exact_prev = exact;
    }
  } else {
    // p = inf: quasi-Newton on the log-sum-exp upper model of max |r_i|
    double eps = 0.0;
    auto fg = [&](const Vector& a, Vector& grad) {
      const Vector r = f - basis_ * a;
      const double m = r.lpNorm<Eigen::Infinity>();
      double sum = 0.0;
      Vector gr = Vector::Zero(r.size());
      for (Eigen::Index i = 0; i < r.size(); ++i) {
        const double ep = std::exp((r[i] - m) / eps);
        const double en = std::exp((-r[i] - m) / eps);
        sum += ep + en;
        gr[i] = ep - en;
      }
      gr /= sum;
      grad.noalias() = -basis_.transpose() * gr;
      return m + eps * std::log(sum);
    };
    for (double e : stage_eps) {
      eps = e * coord_scale;
      const auto out = lbfgs_minimize(fg, alpha, opt_.tol, opt_.max_iter,
                                      opt_.objective_trace);
      total_iterations += out.iterations;
      last_converged = out.converged;
    }
  }

  result.dist = norm(f - basis_ * alpha, space_);
  result.coeffs = alpha.cwiseQuotient(col_scale_);
  result.iterations = total_iterations;
  result.status =
      last_converged ? DistStatus::converged : DistStatus::max_iter;
  return result;
}

DistResult distance(const Vector& f, const Matrix& basis, const SpaceSpec& s,
                    double tol) {
  DistOptions opt;
  opt.tol = tol;
  return DistanceSolver(basis, s, opt).solve(f);
}

DistResult distance_oracle_lp(const Vector& f, const Matrix& basis,
                              const SpaceSpec& s) {
  if (s.is_smooth())
    throw std::domain_error("distance_oracle_lp: p must be 1 or inf");
  const int N = static_cast<int>(f.size());
  const int n = static_cast<int>(basis.cols());
  if (N > 64 || n > 8)
    throw std::out_of_range("distance_oracle_lp: instance too large");
  if (n > 0 && basis.rows() != N)
    throw std::invalid_argument("distance_oracle_lp: dimension mismatch");

  DistResult result;
  result.status = DistStatus::oracle;

  detail::LpResult lp;
  if (s.regime == SpaceSpec::Regime::l1) {
    // min sum(u + v) s.t. B a+ - B a- + u - v = f
    const int vars = 2 * n + 2 * N;
    Matrix A = Matrix::Zero(N, vars);
    A.block(0, 0, N, n) = basis;
    A.block(0, n, N, n) = -basis;
    A.block(0, 2 * n, N, N) = Matrix::Identity(N, N);
    A.block(0, 2 * n + N, N, N) = -Matrix::Identity(N, N);
    Vector c = Vector::Zero(vars);
    c.segment(2 * n, 2 * N).setOnes();
    lp = detail::lp_solve(A, f, c);
  } else {
    // min t s.t. B a + t >= f and -B a + t >= -f (slack form)
    const int vars = 2 * n + 1 + 2 * N;
    Matrix A = Matrix::Zero(2 * N, vars);
    A.block(0, 0, N, n) = basis;
    A.block(0, n, N, n) = -basis;
    A.block(N, 0, N, n) = -basis;
    A.block(N, n, N, n) = basis;
    A.col(2 * n).setOnes();
    A.block(0, 2 * n + 1, 2 * N, 2 * N) = -Matrix::Identity(2 * N, 2 * N);
    Vector b(2 * N);
    b.head(N) = f;
    b.tail(N) = -f;
    Vector c = Vector::Zero(vars);
    c[2 * n] = 1.0;
    lp = detail::lp_solve(A, b, c);
  }

  if (!lp.feasible || !lp.bounded)
    throw std::runtime_error("distance_oracle_lp: simplex failed");
  result.dist = lp.objective;
  result.coeffs = lp.x.head(n) - lp.x.segment(n, n);
  return result;
}

namespace {

// Max of |G alpha restricted to [lo, hi)| / |G alpha| over alpha != 0.
// Shared search kernel for operator_norm and basis_constant.
double partial_ratio_max(const ReducedBasis& basis, int lo, int hi, int n,
                         const OpNormOptions& opt, Vector* best_alpha) {
  const auto cols = basis.g.leftCols(n);
  const auto part = basis.g.middleCols(lo, hi - lo);
  const SpaceSpec s = basis.space;

  auto ratio_of = [&](const Vector& alpha) {
    const Vector v = cols * alpha;
    const double dn = norm(v, s);
    if (dn <= 0.0) return -1.0;
    const Vector u = part * alpha.segment(lo, hi - lo);
    const double un = u.size() ? norm(u, s) : 0.0;
    return un / dn;
  };

  double best = 0.0;
  Vector best_a = Vector::Zero(n);

  auto consider = [&](const Vector& alpha) {
    const double r = ratio_of(alpha);
    if (r > best) {
      best = r;
      best_a = alpha;
    }
  };

  // deterministic floor: unit coefficient vectors inside the window give 1
  for (int k = lo; k < hi; ++k) {
    Vector e = Vector::Zero(n);
    e[k] = 1.0;
    consider(e);
  }

  // pure random sampling floor
  Rng sample_rng(subseed(opt.seed, stream::samples));
  for (int i = 0; i < opt.samples; ++i) {
    Vector alpha(n);
    for (int k = 0; k < n; ++k) alpha[k] = sample_rng.gaussian();
    if (alpha.norm() == 0.0) continue;
    alpha.normalize();
    consider(alpha);
  }

  // multistart projected gradient ascent on the ratio, alpha kept on the
  // l2 sphere (the ratio is scale invariant)
  const std::uint64_t restart_seed = subseed(opt.seed, stream::restarts);
  for (int restart = 0; restart < opt.restarts; ++restart) {
    Rng rng(subseed(restart_seed, static_cast<std::uint64_t>(restart)));
    Vector alpha(n);
    for (int k = 0; k < n; ++k) alpha[k] = rng.gaussian();
    if (alpha.norm() == 0.0) continue;
    alpha.normalize();

    double current = ratio_of(alpha);
    if (current < 0.0) continue;
    double step = 0.5;
    for (int it = 0; it < opt.max_steps; ++it) {
      const Vector v = cols * alpha;
      const double dn = norm(v, s);
      if (dn <= 0.0) break;
      const Vector u = part * alpha.segment(lo, hi - lo);
      const double un = norm(u, s);
      if (un <= 1e-300) break;
      // gradient of log(|u| / |v|) w.r.t. alpha
      Vector grad = Vector::Zero(n);
      grad.segment(lo, hi - lo) =
          part.transpose() * norming_weights(u, s) / un;
      grad -= cols.transpose() * norming_weights(v, s) / dn;
      const double gn = grad.norm();
      if (gn <= 1e-13) break;
      bool improved = false;
      while (step > 1e-12) {
        Vector trial = alpha + step * grad;
        trial.normalize();
        const double r = ratio_of(trial);
        if (r > current * (1.0 + 1e-14)) {
          alpha = trial;
          current = r;
          step = std::min(step * 1.3, 10.0);
          improved = true;
          break;
        }
        step *= 0.5;
      }
      if (!improved) break;
    }
    if (current > best) {
      best = current;
      best_a = alpha;
    }
  }

  if (best_alpha) *best_alpha = best_a;
  return best;
}

}  // namespace

OpNormResult operator_norm(const ReducedBasis& basis, int m, int n,
                           const OpNormOptions& opt) {
  if (!(0 <= m && m < n && n <= basis.size()))
    throw std::out_of_range("operator_norm: need 0 <= m < n <= basis size");
  OpNormResult result;
  result.restarts_used = opt.restarts;
  if (m == 0) {  // R_0 is the identity
    result.value = 1.0;
    result.argmax_coeffs = Vector::Unit(n, 0);
    result.restarts_used = 0;
    return result;
  }
  Vector alpha;
  result.value = partial_ratio_max(basis, m, n, n, opt, &alpha);
  result.argmax_coeffs = alpha;
  return result;
}

double basis_constant(const ReducedBasis& basis, int n,
                      const OpNormOptions& opt) {
  if (!(1 <= n && n <= basis.size()))
    throw std::out_of_range("basis_constant: need 1 <= n <= basis size");
  double best = 1.0;  // S_n on V_n is the identity
  for (int m = 1; m < n; ++m)
    best = std::max(best, partial_ratio_max(basis, 0, m, n, opt, nullptr));
  return best;
}

}  // namespace greedyrb
