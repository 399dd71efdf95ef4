#include <doctest.h>

#include <cmath>

#include "greedyrb/distsolver.hpp"
#include "helpers.hpp"

using namespace greedyrb;
using testutil::vec;

namespace {

Matrix cols(std::initializer_list<Vector> vs) {
  const auto n = static_cast<Eigen::Index>(vs.size());
  Matrix m(vs.begin()->size(), n);
  Eigen::Index j = 0;
  for (const auto& v : vs) m.col(j++) = v;
  return m;
}

}  // namespace

TEST_SUITE("distsolver") {

TEST_CASE("span membership gives zero distance") {
  Rng rng(50);
  for (const auto& s : testutil::all_spaces()) {
    const Matrix basis = testutil::random_matrix(rng, 20, 4);
    const Vector f = basis * testutil::random_vector(rng, 4);
    const double scale = norm(f, s);
    CHECK(distance(f, basis, s, 1e-10).dist <= 1e-8 * scale);
  }
}

TEST_CASE("hilbert orthogonal decomposition") {
  const auto r = distance(vec({1, 1}), cols({vec({1, 0})}), SpaceSpec::lp(2));
  CHECK(r.dist == doctest::Approx(1.0));
  CHECK(r.coeffs[0] == doctest::Approx(1.0));
  CHECK(r.status == DistStatus::converged);
}

TEST_CASE("least absolute deviations recovers the median") {
  // minimize |1-a| + |2-a| + |3-a|: a = 2, distance 2
  const Vector f = vec({1, 2, 3});
  const Matrix basis = cols({vec({1, 1, 1})});
  const auto smoothed = distance(f, basis, SpaceSpec::l1(), 1e-11);
  CHECK(smoothed.dist == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(smoothed.coeffs[0] == doctest::Approx(2.0).epsilon(1e-4));
  const auto lp = distance_oracle_lp(f, basis, SpaceSpec::l1());
  CHECK(lp.dist == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(lp.status == DistStatus::oracle);
}

TEST_CASE("chebyshev midpoint") {
  // minimize max(|0-a|, |4-a|): a = 2, distance 2
  const Vector f = vec({0, 4});
  const Matrix basis = cols({vec({1, 1})});
  const auto smoothed = distance(f, basis, SpaceSpec::linf(), 1e-11);
  CHECK(smoothed.dist == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(smoothed.coeffs[0] == doctest::Approx(2.0).epsilon(1e-4));
  const auto lp = distance_oracle_lp(f, basis, SpaceSpec::linf());
  CHECK(lp.dist == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("oracle edge cases") {
  const Matrix basis = cols({vec({1, 0, 0}), vec({0, 1, 0})});
  const auto zero = distance_oracle_lp(Vector::Zero(3), basis, SpaceSpec::l1());
  CHECK(zero.dist == doctest::Approx(0.0));
  CHECK(zero.coeffs.lpNorm<Eigen::Infinity>() <= 1e-12);
  CHECK_THROWS_AS(
      distance_oracle_lp(Vector::Zero(100), Matrix::Zero(100, 1),
                         SpaceSpec::l1()),
      std::out_of_range);
  CHECK_THROWS_AS(distance_oracle_lp(Vector::Zero(3), basis, SpaceSpec::lp(2)),
                  std::domain_error);
}

TEST_CASE("smoothed path agrees with the simplex oracle on random instances") {
  Rng rng(51);
  for (const auto& s : {SpaceSpec::l1(), SpaceSpec::linf()}) {
    for (int trial = 0; trial < 50; ++trial) {
      const int N = 5 + static_cast<int>(rng.below(8));   // <= 12
      const int n = 1 + static_cast<int>(rng.below(4));   // <= 4
      const Matrix basis = testutil::random_matrix(rng, N, n);
      const Vector f = testutil::random_vector(rng, N);
      const auto iterative = distance(f, basis, s, 1e-11);
      const auto oracle = distance_oracle_lp(f, basis, s);
      CHECK(std::abs(iterative.dist - oracle.dist) <=
            1e-6 * (1.0 + oracle.dist));
    }
  }
}

TEST_CASE("p = 2 path matches the explicit projection identity") {
  Rng rng(52);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix basis = testutil::random_matrix(rng, 15, 3);
    const Vector f = testutil::random_vector(rng, 15);
    const auto r = distance(f, basis, SpaceSpec::lp(2));
    // dist^2 = |f|^2 - |proj|^2
    const Vector proj = basis * r.coeffs;
    const double expected =
        std::sqrt(std::max(0.0, f.squaredNorm() - proj.squaredNorm()));
    CHECK(r.dist == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("smooth exponents match a fine reference minimization") {
  Rng rng(53);
  for (double p : {3.0, 10.0}) {
    const SpaceSpec s = SpaceSpec::lp(p);
    const Matrix basis = testutil::random_matrix(rng, 12, 2);
    const Vector f = testutil::random_vector(rng, 12);
    const auto r = distance(f, basis, s, 1e-12);
    // brute-force refinement around the reported coefficients
    double best = r.dist;
    for (int i = -40; i <= 40; ++i) {
      for (int j = -40; j <= 40; ++j) {
        Vector a = r.coeffs;
        a[0] += i * 1e-3;
        a[1] += j * 1e-3;
        best = std::min(best, norm(f - basis * a, s));
      }
    }
    CHECK(r.dist <= best + 1e-7 * (1.0 + best));
  }
}

TEST_CASE("distance never exceeds the norm and ignores basis scaling") {
  Rng rng(54);
  for (const auto& s : testutil::all_spaces()) {
    const Matrix basis = testutil::random_matrix(rng, 18, 3);
    Matrix scaled = basis;
    scaled.col(0) *= 7.5;
    scaled.col(2) *= 0.03;
    const Vector f = testutil::random_vector(rng, 18);
    const auto a = distance(f, basis, s, 1e-10);
    const auto b = distance(f, scaled, s, 1e-10);
    CHECK(a.dist <= norm(f, s) + 1e-12);
    CHECK(std::abs(a.dist - b.dist) <= 1e-6 * (1.0 + a.dist));
  }
}

TEST_CASE("monotone objective inside each solver stage") {
  Rng rng(55);
  const Matrix basis = testutil::random_matrix(rng, 30, 4);
  const Vector f = testutil::random_vector(rng, 30);
  for (const auto& s : {SpaceSpec::lp(3), SpaceSpec::l1(), SpaceSpec::linf()}) {
    std::vector<double> trace;
    DistOptions opt;
    opt.tol = 1e-10;
    opt.objective_trace = &trace;
    DistanceSolver solver(basis, s, opt);
    solver.solve(f);
    // stages restart the trace at a different smoothing level; within the
    // recorded sequence every accepted step decreases the objective except
    // at stage boundaries where the surrogate itself changes
    int increases = 0;
    for (std::size_t i = 1; i < trace.size(); ++i)
      if (trace[i] > trace[i - 1] * (1.0 + 1e-12) + 1e-300) ++increases;
    const int stages = s.is_smooth() ? 1 : 15;
    CHECK(increases <= stages - 1);
  }
}

TEST_CASE("rank-deficient basis is rejected") {
  Matrix basis(4, 2);
  basis.col(0) = vec({1, 2, 3, 4});
  basis.col(1) = 2.0 * basis.col(0);
  CHECK_THROWS_AS(distance(vec({1, 0, 0, 0}), basis, SpaceSpec::lp(2)),
                  std::domain_error);
}

TEST_CASE("operator norm: identity and orthonormal floors") {
  const auto fixture = testutil::nga_fixture(SpaceSpec::lp(2), 6, 56);
  const auto& basis = fixture.basis;
  OpNormOptions opt;
  opt.restarts = 8;
  opt.samples = 500;
  opt.seed = 3;

  const auto identity = operator_norm(basis, 0, 4, opt);
  CHECK(identity.value == 1.0);

  // orthonormal columns: every remainder has norm exactly 1 on the span
  for (int m = 1; m < 4; ++m) {
    const auto r = operator_norm(basis, m, 4, opt);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.value >= 1.0 - 1e-9);
  }
  CHECK_THROWS_AS(operator_norm(basis, 3, 2, opt), std::out_of_range);
}

TEST_CASE("operator norm is monotone in the search budget") {
  const auto fixture = testutil::nga_fixture(SpaceSpec::l1(), 6, 57);
  const auto& basis = fixture.basis;
  OpNormOptions small;
  small.restarts = 2;
  small.samples = 100;
  small.seed = 9;
  OpNormOptions large = small;
  large.restarts = 8;
  large.samples = 1000;
  const double a = operator_norm(basis, 2, 6, small).value;
  const double b = operator_norm(basis, 2, 6, large).value;
  CHECK(b >= a - 1e-12);
  CHECK(a >= 1.0 - 1e-9);
}

TEST_CASE("basis constant: orthonormal and single-vector cases") {
  OpNormOptions opt;
  opt.restarts = 8;
  opt.samples = 500;
  const auto hilbert = testutil::nga_fixture(SpaceSpec::lp(2), 5, 58);
  CHECK(basis_constant(hilbert.basis, 5, opt) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(basis_constant(hilbert.basis, 1, opt) == doctest::Approx(1.0));
}

TEST_CASE("triangle consistency: |R_m| <= C_g + 1 on the same search space") {
  OpNormOptions opt;
  opt.restarts = 8;
  opt.samples = 1000;
  opt.seed = 5;
  for (const auto& s : {SpaceSpec::l1(), SpaceSpec::lp(10), SpaceSpec::linf()}) {
    const auto fixture = testutil::nga_fixture(s, 6, 59);
    const double cg = basis_constant(fixture.basis, 6, opt);
    for (int m = 1; m < 6; ++m)
      CHECK(operator_norm(fixture.basis, m, 6, opt).value <= cg + 1.0 + 1e-6);
  }
}

TEST_CASE("sandwich: dist <= |R_n f| <= (C_g + 1) dist on the training set") {
  const SpaceSpec s = SpaceSpec::l1();
  const auto ts = gen_random_set(60, 24, 10, 16, s);
  GreedyConfig cfg;
  cfg.max_iterations = 5;
  const auto result = run_nga(ts, cfg);
  const auto& basis = result.basis;
  OpNormOptions opt;
  opt.restarts = 16;
  opt.samples = 2000;
  const double cg = basis_constant(basis, basis.size(), opt);
  for (int j = 0; j < ts.size(); ++j) {
    const Vector f = ts.vectors.col(j);
    const double rn = norm(apply_R(f, basis, basis.size()), s);
    const double dist =
        distance(f, basis.g.leftCols(basis.size()), s, 1e-10).dist;
    CHECK(dist <= rn + 1e-8);
    CHECK(rn <= (cg + 1.0) * dist + 1e-6);
  }
}

}  // TEST_SUITE
