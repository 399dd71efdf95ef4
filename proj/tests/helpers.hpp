#pragma once

#include <vector>

#include "greedyrb/algorithms.hpp"
#include "greedyrb/families.hpp"
#include "greedyrb/rng.hpp"
#include "greedyrb/space.hpp"

namespace testutil {

using greedyrb::Matrix;
using greedyrb::Rng;
using greedyrb::SpaceSpec;
using greedyrb::Vector;

inline Vector random_vector(Rng& rng, int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.gaussian();
  return v;
}

inline Matrix random_matrix(Rng& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = rng.gaussian();
  return m;
}

inline Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<int>(values.size()));
  int i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

inline std::vector<SpaceSpec> all_spaces() {
  return {SpaceSpec::l1(), SpaceSpec::lp(2.0), SpaceSpec::lp(3.0),
          SpaceSpec::lp(10.0), SpaceSpec::linf()};
}

// An NGA basis over random data, the standard fixture for projector checks.
inline greedyrb::GreedyResult nga_fixture(SpaceSpec space, int size,
                                          std::uint64_t seed, int N_h = 60,
                                          int d = 25, int N_tr = 40) {
  const auto ts = greedyrb::gen_random_set(seed, N_h, d, N_tr, space);
  greedyrb::GreedyConfig cfg;
  cfg.max_iterations = size;
  return greedyrb::run_nga(ts, cfg);
}

}  // namespace testutil
