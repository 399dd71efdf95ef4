#pragma once

#include <Eigen/Core>
#include <string>

namespace greedyrb {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Exponent selecting the norm and norming-functional family of a
// finite-dimensional lp space. The three regimes p = 1, 1 < p < inf and
// p = inf are tagged explicitly; infinity is never approximated by a float.
struct SpaceSpec {
  enum class Regime { l1, lp, linf };

  Regime regime = Regime::lp;
  double p = 2.0;  // meaningful only in the lp regime

  static SpaceSpec l1() { return SpaceSpec{Regime::l1, 1.0}; }
  static SpaceSpec lp(double p);
  static SpaceSpec linf() { return SpaceSpec{Regime::linf, 0.0}; }
  // Dispatch on a plain number; p = 1 and p = inf map to their regimes.
  static SpaceSpec from_p(double p);

  bool is_smooth() const { return regime == Regime::lp; }
  bool is_hilbert() const { return regime == Regime::lp && p == 2.0; }
  std::string str() const;  // "1", "2.5", "inf"

  bool operator==(const SpaceSpec&) const = default;
};

// (sum |x_i|^p)^(1/p); sum |x_i| for p = 1; max |x_i| for p = inf.
// Rescaled by max |x_i| internally so large exponents do not overflow.
double norm(const Vector& x, const SpaceSpec& s);

// Lowest index attaining max |x_i| (the lp-infinity tie rule).
Eigen::Index peak_index(const Vector& x);

// F_x(y), the norming functional of x applied to y:
//   Hilbert       <x,y> / |x|
//   1 < p < inf   sum sgn(x_i) |x_i|^(p-1) y_i / |x|^(p-1)
//   p = 1         sum sgn(x_i) y_i, sgn(0) = 0
//   p = inf       sgn(x_m) y_m at the peak coordinate m
double norming_apply(const Vector& x, const Vector& y, const SpaceSpec& s);

// Dual vector w with F_x(y) = w . y (dense even for p = inf).
Vector norming_weights(const Vector& x, const SpaceSpec& s);

// F_x applied to every column of `cols` at once. Exploits the sparsity of
// the p = inf functional; this is the hot path of the hierarchical update.
Eigen::RowVectorXd norming_apply_columns(const Vector& x, const Matrix& cols,
                                         const SpaceSpec& s);

// Central finite difference (|x+hy| - |x-hy|) / 2h. Validation oracle for
// norming_apply; defined only in the smooth regime.
double gateaux_functional(const Vector& x, const Vector& y, const SpaceSpec& s,
                          double h);

// Power-type upper model of the modulus of smoothness:
// u^p/p for 1 < p <= 2, (p-1) u^2/2 for p >= 2, u for p in {1, inf}.
double modulus_rho(double u, const SpaceSpec& s);

struct SmoothnessConstant {
  double mu;  // root of 1 + mu = 2 mu rho(1/mu) in (0, 1]
  double R;   // min(1 + mu, 2)
};

SmoothnessConstant smoothness_constant(const SpaceSpec& s);

}  // namespace greedyrb
