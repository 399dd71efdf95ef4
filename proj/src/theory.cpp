#include "greedyrb/theory.hpp"

#include <cmath>
#include <stdexcept>

namespace greedyrb {

namespace {

double width_exponent(const SpaceSpec& s) {
  switch (s.regime) {
    case SpaceSpec::Regime::l1:
    case SpaceSpec::Regime::linf:
      return 0.5;
    case SpaceSpec::Regime::lp:
      return std::abs(0.5 - 1.0 / s.p);
  }
  return 0.5;
}

}  // namespace

double gamma_bound(int n, const SpaceSpec& s) {
  if (n < 1) throw std::invalid_argument("gamma_bound: n >= 1");
  return std::pow(static_cast<double>(n), width_exponent(s));
}

double R_power_bound(int n, const SpaceSpec& s) {
  if (n < 1) throw std::invalid_argument("R_power_bound: n >= 1");
  return std::pow(smoothness_constant(s).R, (n - 1) / 2.0);
}

double B_bound(int n, const SpaceSpec& s, double C_g) {
  if (C_g < 1.0) throw std::invalid_argument("B_bound: C_g >= 1");
  return std::min(std::pow(smoothness_constant(s).R, n), C_g + 1.0);
}

double direct_bound(int n, const SpaceSpec& s, double d_n, double C_g) {
  if (!(d_n > 0.0)) throw std::invalid_argument("direct_bound: d_n > 0");
  return B_bound(n + 1, s, C_g) * gamma_bound(2 * n + 1, s) *
         std::pow(2.0, n + 1) * d_n;
}

double delayed_bound(int n, int m, const SpaceSpec& s, double d_m,
                     double C_g) {
  if (!(d_m > 0.0)) throw std::invalid_argument("delayed_bound: d_m > 0");
  if (!(0 < m && m < n))
    throw std::invalid_argument("delayed_bound: need 0 < m < n");
  const double half =
      std::min(std::pow(smoothness_constant(s).R, n / 2.0), C_g + 1.0);
  return std::sqrt(2.0) * half * gamma_bound(n + m, s) *
         std::pow(d_m, 1.0 - static_cast<double>(m) / n);
}

}  // namespace greedyrb
