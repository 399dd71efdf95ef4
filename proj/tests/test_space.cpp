#include <doctest.h>

#include <cmath>

#include "greedyrb/space.hpp"
#include "helpers.hpp"

using namespace greedyrb;
using testutil::vec;

TEST_SUITE("space") {

TEST_CASE("norm closed forms") {
  CHECK(norm(vec({3, 4}), SpaceSpec::lp(2)) == doctest::Approx(5.0));
  CHECK(norm(vec({1, -2, 3}), SpaceSpec::l1()) == doctest::Approx(6.0));
  CHECK(norm(vec({1, -2, 3}), SpaceSpec::linf()) == doctest::Approx(3.0));
  CHECK_THROWS_AS(norm(Vector(0), SpaceSpec::l1()), std::domain_error);
}

TEST_CASE("norm is overflow safe for large exponents") {
  Vector x = 1e150 * vec({1, 1, 1});
  CHECK(norm(x, SpaceSpec::lp(10)) ==
        doctest::Approx(1e150 * std::pow(3.0, 0.1)));
}

TEST_CASE("norming functional closed-form examples") {
  CHECK(norming_apply(vec({3, 4}), vec({1, 0}), SpaceSpec::lp(2)) ==
        doctest::Approx(0.6));
  // sgn(0) = 0 in the l1 functional
  CHECK(norming_apply(vec({1, -2, 0}), vec({1, 1, 1}), SpaceSpec::l1()) ==
        doctest::Approx(0.0));
  // sup-norm peak at the second coordinate, sign of -3
  CHECK(norming_apply(vec({1, -3}), vec({5, 7}), SpaceSpec::linf()) ==
        doctest::Approx(-7.0));
  CHECK_THROWS_AS(
      norming_apply(vec({0, 0}), vec({1, 1}), SpaceSpec::lp(3)),
      std::domain_error);
}

TEST_CASE("sup-norm peak ties break to the lowest index") {
  CHECK(peak_index(vec({2, -2, 2})) == 0);
  CHECK(norming_apply(vec({2, -2}), vec({10, 20}), SpaceSpec::linf()) ==
        doctest::Approx(10.0));
}

TEST_CASE("F_x(x) = |x| over random vectors, all regimes") {
  Rng rng(11);
  for (const auto& s : testutil::all_spaces()) {
    for (int trial = 0; trial < 100; ++trial) {
      const Vector x = testutil::random_vector(rng, 17);
      CHECK(norming_apply(x, x, s) ==
            doctest::Approx(norm(x, s)).epsilon(1e-10));
    }
  }
}

TEST_CASE("unit dual norm: |F_x(y)| <= |y|") {
  Rng rng(12);
  for (const auto& s : testutil::all_spaces()) {
    for (int trial = 0; trial < 100; ++trial) {
      const Vector x = testutil::random_vector(rng, 13);
      Vector y = testutil::random_vector(rng, 13);
      y /= norm(y, s);
      CHECK(std::abs(norming_apply(x, y, s)) <= 1.0 + 1e-10);
    }
  }
}

TEST_CASE("norming weights reproduce the functional") {
  Rng rng(13);
  for (const auto& s : testutil::all_spaces()) {
    const Vector x = testutil::random_vector(rng, 9);
    const Vector y = testutil::random_vector(rng, 9);
    CHECK(norming_weights(x, s).dot(y) ==
          doctest::Approx(norming_apply(x, y, s)).epsilon(1e-12));
    Matrix cols = testutil::random_matrix(rng, 9, 4);
    const auto row = norming_apply_columns(x, cols, s);
    for (int j = 0; j < 4; ++j)
      CHECK(row[j] ==
            doctest::Approx(norming_apply(x, cols.col(j), s)).epsilon(1e-12));
  }
}

TEST_CASE("gateaux derivative matches the closed form") {
  CHECK(gateaux_functional(vec({3, 4}), vec({1, 0}), SpaceSpec::lp(2), 1e-6) ==
        doctest::Approx(0.6).epsilon(1e-6));

  Rng rng(14);
  const SpaceSpec p4 = SpaceSpec::lp(4);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector x = testutil::random_vector(rng, 11);
    const Vector y = testutil::random_vector(rng, 11);
    const double closed = norming_apply(x, y, p4);
    const double fd = gateaux_functional(x, y, p4, 1e-6);
    CHECK(std::abs(closed - fd) <= 1e-5 * (1.0 + std::abs(closed)));
  }

  const Vector x = vec({1, -2, 0.5});
  CHECK(gateaux_functional(x, x, SpaceSpec::lp(3), 1e-7) ==
        doctest::Approx(norm(x, SpaceSpec::lp(3))).epsilon(1e-6));

  CHECK_THROWS_AS(gateaux_functional(x, x, SpaceSpec::l1(), 1e-6),
                  std::domain_error);
  CHECK_THROWS_AS(gateaux_functional(x, x, SpaceSpec::linf(), 1e-6),
                  std::domain_error);
}

TEST_CASE("modulus of smoothness power models") {
  CHECK(modulus_rho(1.0, SpaceSpec::lp(2)) == doctest::Approx(0.5));
  CHECK(modulus_rho(0.3, SpaceSpec::l1()) == doctest::Approx(0.3));
  CHECK(modulus_rho(2.0, SpaceSpec::lp(4)) == doctest::Approx(6.0));
  CHECK(modulus_rho(0.7, SpaceSpec::linf()) == doctest::Approx(0.7));
}

TEST_CASE("smoothness constant: golden ratio at p = 2, clamp at 2") {
  const auto h = smoothness_constant(SpaceSpec::lp(2));
  CHECK(h.R == doctest::Approx(1.6180339887).epsilon(1e-9));
  CHECK(1.0 + h.mu ==
        doctest::Approx(2.0 * h.mu * modulus_rho(1.0 / h.mu, SpaceSpec::lp(2)))
            .epsilon(1e-10));
  CHECK(smoothness_constant(SpaceSpec::l1()).R == doctest::Approx(2.0));
  CHECK(smoothness_constant(SpaceSpec::linf()).R == doctest::Approx(2.0));
}

TEST_CASE("smoothness constant grows toward 2 away from p = 2") {
  const double r2 = smoothness_constant(SpaceSpec::lp(2)).R;
  const double r25 = smoothness_constant(SpaceSpec::lp(2.5)).R;
  const double r3 = smoothness_constant(SpaceSpec::lp(3)).R;
  CHECK(r2 < r25);
  CHECK(r25 < r3);
  CHECK(r3 == doctest::Approx(2.0).epsilon(1e-9));

  const double r17 = smoothness_constant(SpaceSpec::lp(1.7)).R;
  const double r13 = smoothness_constant(SpaceSpec::lp(1.3)).R;
  CHECK(r2 < r17);
  CHECK(r17 < r13);
  CHECK(r13 < 2.0 + 1e-12);
  CHECK(smoothness_constant(SpaceSpec::lp(10)).R == doctest::Approx(2.0));
}

}  // TEST_SUITE
