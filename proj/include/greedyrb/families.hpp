#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "greedyrb/algorithms.hpp"
#include "greedyrb/space.hpp"

namespace greedyrb {

struct GridAxis {
  double min;
  double max;
  int count;
};

// Uniform sampling grids. Points on [min, max] with count N include both
// endpoints, spacing (max - min) / (N - 1). Multi-dimensional grids flatten
// with dimension 0 varying fastest.
struct GridSpec {
  std::vector<GridAxis> spatial;
  std::vector<GridAxis> parametric;
};

std::vector<double> grid_points(const GridAxis& axis);

// Pointwise parametric families; every evaluator validates its domain.
double family_2param(double x, double mu1, double mu2);       // [-2,2], [0,2]^2
double family_1d(double x, double mu);                        // [-1,1], [1,pi]
double family_1d_perturbed(double x, double mu);              // adds an indicator spike
double family_2d(double x1, double x2, double mu1, double mu2);
double family_3d(double x1, double x2, double x3, double mu1, double mu2,
                 double mu3);

struct FamilyInfo {
  std::string name;
  int spatial_dims;
  int parametric_dims;
  GridSpec default_grid;
};

const std::vector<FamilyInfo>& family_registry();
const FamilyInfo& family_info(const std::string& name);

// Fills the grid for the named family ("2param", "1d", "1d_perturbed",
// "2d", "3d"). Column j holds the snapshot for the j-th parameter tuple;
// column labels carry the tuple values.
TrainingSet sample_family(const std::string& name, const GridSpec& grid,
                          SpaceSpec space);

// Random synthetic data: d Gaussian directions in R^{N_h}, N_tr uniform
// (-1, 1) combinations of them. Deterministic for a fixed seed.
TrainingSet gen_random_set(std::uint64_t seed, int N_h, int d, int N_tr,
                           SpaceSpec s);

struct NoiseSpec {
  enum class Mode { indicator_shift, coordinate_fraction };
  enum class Ref { avg, max };

  Mode mode = Mode::coordinate_fraction;
  double fraction = 0.0;       // share of all N_h * N_tr coordinates
  Ref magnitude_ref = Ref::avg;
  std::uint64_t seed = 0;
};

// coordinate_fraction: replaces floor(fraction * N_h * N_tr) distinct
// coordinates (chosen uniformly, seeded) with uniform draws in [0, ref],
// where ref is the mean or the max of |coordinates| over the whole set.
// indicator_shift: adds the unit indicator of ((mu-1)/1000, mu/1000) per
// column; requires the one-dimensional grid that produced the set.
TrainingSet add_noise(const TrainingSet& ts, const NoiseSpec& spec,
                      const GridSpec* grid = nullptr);

struct CounterexampleSet {
  TrainingSet set;     // {alpha f*} then {a_n f_n}, in l1 coordinates
  int threshold_M;     // min n >= 1 with alpha >= a_n / (2(1-eps))^n
  double eps;
  double alpha;
  std::vector<double> a;
};

// Truncated compact set from the slow-convergence construction: f* = e_0,
// f_n = -(eps/2^n) e_0 - sum_k (eps/2^{n+1-k}) e_k + (1-eps) e_{n+1}.
// All f_n have unit l1 norm and are semi-orthogonal under the l1 functional.
CounterexampleSet counterexample_set(double eps, std::span<const double> a,
                                     double alpha, int size);

// default decay a_n = 2^{-n/4}
std::vector<double> counterexample_default_a(int size);

// alpha with threshold_M == target exactly, for the default decay
double counterexample_alpha_for(double eps, std::span<const double> a,
                                int target_M);

}  // namespace greedyrb
