#pragma once

// Dense two-phase primal simplex, internal to the distance oracle.
// Sized for tiny instances (tens of rows); Bland's rule, so no cycling.

#include <Eigen/Core>

namespace greedyrb::detail {

struct LpResult {
  bool feasible = false;
  bool bounded = true;
  double objective = 0.0;
  Eigen::VectorXd x;
};

// minimize c.x subject to A x = b, x >= 0
LpResult lp_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& c);

}  // namespace greedyrb::detail
