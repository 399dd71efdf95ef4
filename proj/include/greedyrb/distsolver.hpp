#pragma once

#include <Eigen/QR>
#include <cstdint>
#include <vector>

#include "greedyrb/projector.hpp"
#include "greedyrb/space.hpp"

namespace greedyrb {

enum class DistStatus { converged, max_iter, oracle };

struct DistResult {
  double dist = 0.0;      // |f - sum coeffs_k b_k| in the requested norm
  Vector coeffs;          // optimal coefficients against the given basis
  int iterations = 0;
  DistStatus status = DistStatus::converged;
};

struct DistOptions {
  double tol = 1e-9;   // relative objective tolerance
  int max_iter = 500;  // quasi-Newton steps per smoothing stage
  // p in {1, inf}: route to the exact LP when N_h <= lp_threshold_nh and
  // n <= 8. Disabled by default so the smoothed path stays the production
  // route and the LP remains an independent oracle.
  int lp_threshold_nh = 0;
  // test hook: records the objective after every accepted step
  std::vector<double>* objective_trace = nullptr;
};

// Best-approximation distance from f to the span of the basis columns.
//   p = 2        exact normal-equations solve (QR)
//   1 < p < inf  L-BFGS with Armijo line search, l2 solution as initializer
//   p in {1,inf} the same kernel on a smoothed surrogate with a decreasing
//                smoothing schedule, each stage warm-started
// The reported distance is always the exact norm of the final residual, so
// a capped run still returns a valid upper bound (status max_iter).
class DistanceSolver {
 public:
  // Throws std::domain_error when the basis columns are rank deficient.
  DistanceSolver(const Matrix& basis, SpaceSpec space, DistOptions opt = {});

  DistResult solve(const Vector& f) const;

  const Matrix& basis() const { return basis_; }

 private:
  Matrix basis_;       // columns rescaled to unit l2 length
  Vector col_scale_;   // original column norms, for mapping coeffs back
  SpaceSpec space_;
  DistOptions opt_;
  Eigen::ColPivHouseholderQR<Matrix> qr_;
};

DistResult distance(const Vector& f, const Matrix& basis, const SpaceSpec& s,
                    double tol = 1e-9);

// Exact simplex solve of the least-absolute-deviations (p = 1) or Chebyshev
// (p = inf) formulation. Acceptance oracle; sizes are deliberately capped
// (N_h <= 64, n <= 8).
DistResult distance_oracle_lp(const Vector& f, const Matrix& basis,
                              const SpaceSpec& s);

struct OpNormOptions {
  int restarts = 64;
  int samples = 10000;
  int max_steps = 200;  // ascent steps per restart
  std::uint64_t seed = 0;
};

struct OpNormResult {
  double value = 1.0;    // certified lower bound on the operator norm
  Vector argmax_coeffs;  // alpha achieving it
  int restarts_used = 0;
};

// Lower bound for |R_m| on V_n: maximizes
//   |sum_{k=m}^{n-1} alpha_k g_k| / |sum_{k=0}^{n-1} alpha_k g_k|
// by multistart projected gradient ascent plus pure random sampling.
// m = 0 returns exactly 1 (R_0 is the identity).
OpNormResult operator_norm(const ReducedBasis& basis, int m, int n,
                           const OpNormOptions& opt = {});

// Measured lower bound for the basis constant C_g: the largest partial-sum
// projection norm max_{0 < m < n} |S_m| on V_n, same search machinery.
double basis_constant(const ReducedBasis& basis, int n,
                      const OpNormOptions& opt = {});

}  // namespace greedyrb
