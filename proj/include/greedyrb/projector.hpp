#pragma once

#include <utility>
#include <vector>

#include "greedyrb/space.hpp"

namespace greedyrb {

// Ordered reduced basis g_0..g_{M-1} with the construction bookkeeping the
// algorithms emit: selected training indices, per-iteration scores and, in
// the lp-infinity case, the interpolation coordinate of each basis vector.
struct ReducedBasis {
  SpaceSpec space;
  Matrix g;                    // N_h x size, columns normalized in `space`
  std::vector<int> selected;   // training indices, empty for POD
  std::vector<double> scores;  // tau_n / sigma_n / singular values
  std::vector<int> points;     // peak coordinates z_k, lp-infinity only

  int size() const { return static_cast<int>(g.cols()); }
  Eigen::Index dim() const { return g.rows(); }
};

// One projection remainder r(f) = f - F_g(f) g. Returns the remainder and
// the coefficient increment F_g(f). Requires |g| = 1.
std::pair<Vector, double> residual_step(const Vector& r, const Vector& g,
                                        const SpaceSpec& s);

// R_n(f) = r_{n-1} o ... o r_0 (f), from scratch; n = 0 is the identity.
// Linear in f with kernel span{g_0..g_{n-1}}.
Vector apply_R(const Vector& f, const ReducedBasis& basis, int n);

struct Reconstruction {
  Vector approximation;  // f - R_n(f) = sum coeffs_k g_k
  Vector coeffs;         // accumulated functional values against g
};

Reconstruction reconstruct(const Vector& f, const ReducedBasis& basis);

// Per-training-element residuals R_n(f) plus accumulated coefficients,
// advanced one rank-1 projection at a time. Column j of `residuals` pairs
// with column j of `coeffs`; updates are column-local, so advancing the
// cache parallelizes over elements without shared mutable state.
struct ResidualCache {
  explicit ResidualCache(const Matrix& elements, SpaceSpec space);

  Matrix residuals;  // N_h x N_tr
  Matrix coeffs;     // n x N_tr
  SpaceSpec space;
  int n = 0;

  int size() const { return static_cast<int>(residuals.cols()); }
};

// Advances every cached residual by one residual_step with g_new and
// appends the coefficient row.
void update_cache(ResidualCache& cache, const Vector& g_new);

// Coefficients against the raw selected snapshots: solves the upper
// triangular change of basis from g-coordinates (EIM comparisons only).
Vector to_snapshot_coeffs(const ReducedBasis& basis,
                          const Matrix& selected_snapshots,
                          const Vector& g_coeffs);

}  // namespace greedyrb
