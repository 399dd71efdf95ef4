#pragma once

#include <string>
#include <vector>

#include "greedyrb/space.hpp"

namespace greedyrb {

// Closed-form bound curves for diagnostic overlay against measured errors.

struct BoundCurve {
  std::vector<int> n;
  std::vector<double> value;
  std::string kind;  // gamma | direct | delayed | R_power | B_bound
};

// n^|1/2 - 1/p|; exponent 1/2 at both p = 1 and p = inf
double gamma_bound(int n, const SpaceSpec& s);

// R(X)^((n-1)/2), the worst-case compounded projector-norm factor
double R_power_bound(int n, const SpaceSpec& s);

// B_n^g = min(R^n, C_g + 1); pass C_g = inf when no measurement exists
double B_bound(int n, const SpaceSpec& s, double C_g);

// B_{n+1} * gamma_{2n+1} * 2^{n+1} * d_n, the direct comparison bound.
// Callers supply a d_n surrogate (measured POD errors act as width proxies).
double direct_bound(int n, const SpaceSpec& s, double d_n, double C_g);

// sqrt(2) * B_{n/2} * gamma_{n+m} * d_m^{1-m/n}, the delayed bound, 0 < m < n
double delayed_bound(int n, int m, const SpaceSpec& s, double d_m, double C_g);

}  // namespace greedyrb
