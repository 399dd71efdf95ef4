#include "greedyrb/projector.hpp"

#include <stdexcept>

#include "greedyrb/parallel.hpp"

namespace greedyrb {

std::pair<Vector, double> residual_step(const Vector& r, const Vector& g,
                                        const SpaceSpec& s) {
  const double c = norming_apply(g, r, s);  // throws on g = 0
  return {r - c * g, c};
}

Vector apply_R(const Vector& f, const ReducedBasis& basis, int n) {
  if (n < 0 || n > basis.size())
    throw std::out_of_range("apply_R: n exceeds basis size");
  if (f.size() != basis.dim() && basis.size() > 0)
    throw std::invalid_argument("apply_R: dimension mismatch");
  Vector r = f;
  for (int k = 0; k < n; ++k) {
    const double c = norming_apply(basis.g.col(k), r, basis.space);
    r -= c * basis.g.col(k);
  }
  return r;
}

Reconstruction reconstruct(const Vector& f, const ReducedBasis& basis) {
  if (basis.size() == 0)
    throw std::invalid_argument("reconstruct: empty basis");
  if (f.size() != basis.dim())
    throw std::invalid_argument("reconstruct: dimension mismatch");
  Vector r = f;
  Vector coeffs(basis.size());
  for (int k = 0; k < basis.size(); ++k) {
    coeffs[k] = norming_apply(basis.g.col(k), r, basis.space);
    r -= coeffs[k] * basis.g.col(k);
  }
  return {f - r, coeffs};
}

ResidualCache::ResidualCache(const Matrix& elements, SpaceSpec space_)
    : residuals(elements), coeffs(0, elements.cols()), space(space_) {}

void update_cache(ResidualCache& cache, const Vector& g_new) {
  if (g_new.size() != cache.residuals.rows())
    throw std::invalid_argument("update_cache: dimension mismatch");
  const Eigen::RowVectorXd c =
      norming_apply_columns(g_new, cache.residuals, cache.space);
  const Eigen::Index cols = cache.residuals.cols();
  parallel_for(0, cols, [&](std::int64_t j) {
    cache.residuals.col(j).noalias() -= c[j] * g_new;
  });
  cache.coeffs.conservativeResize(cache.n + 1, Eigen::NoChange);
  cache.coeffs.row(cache.n) = c;
  ++cache.n;
}

Vector to_snapshot_coeffs(const ReducedBasis& basis,
                          const Matrix& selected_snapshots,
                          const Vector& g_coeffs) {
  const int n = static_cast<int>(g_coeffs.size());
  if (selected_snapshots.cols() < n)
    throw std::invalid_argument("to_snapshot_coeffs: missing snapshots");
  // T(j, k) = coefficient of g_j in f_k, upper triangular by construction.
  Matrix T = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    Vector r = selected_snapshots.col(k);
    for (int j = 0; j <= k; ++j) {
      T(j, k) = norming_apply(basis.g.col(j), r, basis.space);
      r -= T(j, k) * basis.g.col(j);
    }
  }
  // back substitution for T beta = g_coeffs
  Vector beta(n);
  for (int i = n - 1; i >= 0; --i) {
    double acc = g_coeffs[i];
    for (int k = i + 1; k < n; ++k) acc -= T(i, k) * beta[k];
    if (T(i, i) == 0.0)
      throw std::domain_error("to_snapshot_coeffs: singular change of basis");
    beta[i] = acc / T(i, i);
  }
  return beta;
}

}  // namespace greedyrb
