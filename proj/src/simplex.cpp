#include "simplex.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace greedyrb::detail {

namespace {

// Entries below kPivotTol are treated as zero; dividing by anything smaller
// amplifies accumulated rounding into the basic solution.
constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;

void pivot(Eigen::MatrixXd& T, std::vector<int>& basis, int prow, int pcol) {
  T.row(prow) /= T(prow, pcol);
  for (Eigen::Index i = 0; i < T.rows(); ++i) {
    if (i == prow) continue;
    const double factor = T(i, pcol);
    if (factor != 0.0) T.row(i) -= factor * T.row(prow);
  }
  basis[prow] = pcol;
}

// Runs simplex on the tableau; pricing restricted to columns < ncols.
// Dantzig pricing with largest-pivot tie-breaking, switching to Bland's
// rule after half the pivot budget to rule out cycling.
// Returns true when optimal, false when unbounded.
bool iterate(Eigen::MatrixXd& T, std::vector<int>& basis, int ncols) {
  const int m = static_cast<int>(T.rows()) - 1;
  const int rhs = static_cast<int>(T.cols()) - 1;
  const int budget = 1000 + 50 * (m + ncols);
  for (int k = 0; k < budget; ++k) {
    const bool bland = k >= budget / 2;
    int pcol = -1;
    double most_negative = -kCostTol;
    for (int j = 0; j < ncols; ++j) {
      if (T(m, j) < most_negative) {
        pcol = j;
        if (bland) break;
        most_negative = T(m, j);
      }
    }
    if (pcol < 0) return true;

    int prow = -1;
    double best = 0.0;
    for (int i = 0; i < m; ++i) {
      if (T(i, pcol) <= kPivotTol) continue;
      const double ratio = std::max(T(i, rhs), 0.0) / T(i, pcol);
      if (prow < 0 || ratio < best - 1e-12 * (1.0 + best)) {
        prow = i;
        best = ratio;
      } else if (ratio <= best + 1e-12 * (1.0 + best)) {
        const bool prefer = bland ? basis[i] < basis[prow]
                                  : T(i, pcol) > T(prow, pcol);
        if (prefer) prow = i;
      }
    }
    if (prow < 0) return false;
    pivot(T, basis, prow, pcol);
  }
  throw std::runtime_error("simplex: pivot budget exhausted");
}

}  // namespace

LpResult lp_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& c) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());

  // tableau: [A | I_artificial | b], cost row last
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  T.block(0, 0, m, n) = A;
  T.block(0, n, m, m) = Eigen::MatrixXd::Identity(m, m);
  T.block(0, n + m, m, 1) = b;
  for (int i = 0; i < m; ++i) {
    if (T(i, n + m) < 0.0) {
      T.row(i) = -T.row(i);
      T(i, n + i) = 1.0;
    }
  }

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  // phase 1: minimize the artificial sum
  for (int i = 0; i < m; ++i) T.row(m) -= T.row(i);
  T.block(m, n, 1, m).setZero();
  iterate(T, basis, n + m);

  LpResult result;
  if (T(m, n + m) < -1e-7) return result;  // infeasible

  // drive any leftover artificial out of the basis on the numerically
  // strongest original column; a row with no usable entry is redundant
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    int pcol = -1;
    double strongest = kPivotTol;
    for (int j = 0; j < n; ++j) {
      if (std::abs(T(i, j)) > strongest) {
        strongest = std::abs(T(i, j));
        pcol = j;
      }
    }
    if (pcol >= 0) pivot(T, basis, i, pcol);
  }

  // phase 2
  T.row(m).setZero();
  for (int j = 0; j < n; ++j) T(m, j) = c[j];
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n && c[basis[i]] != 0.0) T.row(m) -= c[basis[i]] * T.row(i);
  }
  result.feasible = true;
  result.bounded = iterate(T, basis, n);
  if (!result.bounded) return result;

  result.x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) result.x[basis[i]] = std::max(0.0, T(i, n + m));
  }
  result.objective = c.dot(result.x);
  return result;
}

}  // namespace greedyrb::detail
