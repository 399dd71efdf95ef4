#include "greedyrb/space.hpp"

#include <cmath>
#include <stdexcept>

namespace greedyrb {

namespace {

inline double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

void check_same_size(const Vector& x, const Vector& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("space: dimension mismatch");
}

void check_nonzero(const Vector& x, double nrm) {
  if (x.size() == 0 || nrm == 0.0)
    throw std::domain_error("space: norming functional of the zero vector");
}

}  // namespace

SpaceSpec SpaceSpec::lp(double p) {
  if (!(p > 1.0) || std::isinf(p))
    throw std::domain_error("SpaceSpec::lp requires 1 < p < inf");
  return SpaceSpec{Regime::lp, p};
}

SpaceSpec SpaceSpec::from_p(double p) {
  if (std::isinf(p) && p > 0) return linf();
  if (p == 1.0) return l1();
  return lp(p);
}

std::string SpaceSpec::str() const {
  switch (regime) {
    case Regime::l1: return "1";
    case Regime::linf: return "inf";
    case Regime::lp: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%g", p);
      return buf;
    }
  }
  return "?";
}

double norm(const Vector& x, const SpaceSpec& s) {
  if (x.size() == 0) throw std::domain_error("norm: empty vector");
  switch (s.regime) {
    case SpaceSpec::Regime::l1: return x.lpNorm<1>();
    case SpaceSpec::Regime::linf: return x.lpNorm<Eigen::Infinity>();
    case SpaceSpec::Regime::lp: {
      if (s.p == 2.0) return x.norm();
      const double scale = x.lpNorm<Eigen::Infinity>();
      if (scale == 0.0) return 0.0;
      double acc = 0.0;
      for (Eigen::Index i = 0; i < x.size(); ++i)
        acc += std::pow(std::abs(x[i]) / scale, s.p);
      return scale * std::pow(acc, 1.0 / s.p);
    }
  }
  return 0.0;
}

Eigen::Index peak_index(const Vector& x) {
  const double m = x.lpNorm<Eigen::Infinity>();
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (std::abs(x[i]) == m) return i;
  return 0;
}

double norming_apply(const Vector& x, const Vector& y, const SpaceSpec& s) {
  check_same_size(x, y);
  switch (s.regime) {
    case SpaceSpec::Regime::l1: {
      if (x.size() == 0 || x.lpNorm<Eigen::Infinity>() == 0.0)
        throw std::domain_error("space: norming functional of the zero vector");
      double acc = 0.0;
      for (Eigen::Index i = 0; i < x.size(); ++i) acc += sgn(x[i]) * y[i];
      return acc;
    }
    case SpaceSpec::Regime::linf: {
      const double nrm = x.size() ? x.lpNorm<Eigen::Infinity>() : 0.0;
      check_nonzero(x, nrm);
      const Eigen::Index m = peak_index(x);
      return sgn(x[m]) * y[m];
    }
    case SpaceSpec::Regime::lp: {
      const double nrm = x.size() ? norm(x, s) : 0.0;
      check_nonzero(x, nrm);
      if (s.p == 2.0) return x.dot(y) / nrm;
      double acc = 0.0;
      for (Eigen::Index i = 0; i < x.size(); ++i)
        acc += sgn(x[i]) * std::pow(std::abs(x[i]) / nrm, s.p - 1.0) * y[i];
      return acc;
    }
  }
  return 0.0;
}

Vector norming_weights(const Vector& x, const SpaceSpec& s) {
  Vector w = Vector::Zero(x.size());
  switch (s.regime) {
    case SpaceSpec::Regime::l1: {
      if (x.size() == 0 || x.lpNorm<Eigen::Infinity>() == 0.0)
        throw std::domain_error("space: norming functional of the zero vector");
      for (Eigen::Index i = 0; i < x.size(); ++i) w[i] = sgn(x[i]);
      return w;
    }
    case SpaceSpec::Regime::linf: {
      const double nrm = x.size() ? x.lpNorm<Eigen::Infinity>() : 0.0;
      check_nonzero(x, nrm);
      const Eigen::Index m = peak_index(x);
      w[m] = sgn(x[m]);
      return w;
    }
    case SpaceSpec::Regime::lp: {
      const double nrm = x.size() ? norm(x, s) : 0.0;
      check_nonzero(x, nrm);
      if (s.p == 2.0) {
        w = x / nrm;
        return w;
      }
      for (Eigen::Index i = 0; i < x.size(); ++i)
        w[i] = sgn(x[i]) * std::pow(std::abs(x[i]) / nrm, s.p - 1.0);
      return w;
    }
  }
  return w;
}

Eigen::RowVectorXd norming_apply_columns(const Vector& x, const Matrix& cols,
                                         const SpaceSpec& s) {
  if (x.size() != cols.rows())
    throw std::invalid_argument("space: dimension mismatch");
  if (s.regime == SpaceSpec::Regime::linf) {
    const double nrm = x.size() ? x.lpNorm<Eigen::Infinity>() : 0.0;
    check_nonzero(x, nrm);
    const Eigen::Index m = peak_index(x);
    return sgn(x[m]) * cols.row(m);
  }
  return norming_weights(x, s).transpose() * cols;
}

double gateaux_functional(const Vector& x, const Vector& y, const SpaceSpec& s,
                          double h) {
  if (!s.is_smooth())
    throw std::domain_error(
        "gateaux_functional: norm is not differentiable for p in {1, inf}");
  check_same_size(x, y);
  if (norm(x, s) == 0.0)
    throw std::domain_error("gateaux_functional: x must be nonzero");
  if (!(h > 0.0)) throw std::invalid_argument("gateaux_functional: h > 0");
  return (norm(x + h * y, s) - norm(x - h * y, s)) / (2.0 * h);
}

double modulus_rho(double u, const SpaceSpec& s) {
  if (u < 0.0) throw std::domain_error("modulus_rho: u >= 0");
  switch (s.regime) {
    case SpaceSpec::Regime::l1:
    case SpaceSpec::Regime::linf:
      return u;
    case SpaceSpec::Regime::lp:
      if (s.p <= 2.0) return std::pow(u, s.p) / s.p;
      return 0.5 * (s.p - 1.0) * u * u;
  }
  return u;
}

SmoothnessConstant smoothness_constant(const SpaceSpec& s) {
  // h(mu) = 2 mu rho(1/mu) - (1 + mu); root in (0, 1], else mu = 1, R = 2.
  auto h = [&](double mu) {
    return 2.0 * mu * modulus_rho(1.0 / mu, s) - (1.0 + mu);
  };
  if (h(1.0) >= 0.0) return {1.0, 2.0};
  // h -> +inf as mu -> 0 for every power type q > 1, so a sign change exists.
  double lo = 1e-9, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (h(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double mu = 0.5 * (lo + hi);
  return {mu, std::min(1.0 + mu, 2.0)};
}

}  // namespace greedyrb
