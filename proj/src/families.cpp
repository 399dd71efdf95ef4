#include "greedyrb/families.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_set>

#include "greedyrb/parallel.hpp"
#include "greedyrb/rng.hpp"

namespace greedyrb {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_domain(bool ok, const char* what) {
  if (!ok) throw std::domain_error(std::string("family: ") + what);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::vector<double> grid_points(const GridAxis& axis) {
  if (axis.count < 1) throw std::invalid_argument("grid: count >= 1");
  if (axis.min > axis.max) throw std::invalid_argument("grid: min <= max");
  std::vector<double> pts(axis.count);
  if (axis.count == 1) {
    pts[0] = axis.min;
    return pts;
  }
  const double h = (axis.max - axis.min) / (axis.count - 1);
  for (int i = 0; i < axis.count; ++i) pts[i] = axis.min + i * h;
  pts.back() = axis.max;
  return pts;
}

double family_2param(double x, double mu1, double mu2) {
  check_domain(x >= -2.0 && x <= 2.0, "x outside [-2, 2]");
  check_domain(mu1 >= 0.0 && mu1 <= 2.0 && mu2 >= 0.0 && mu2 <= 2.0,
               "mu outside [0, 2]^2");
  const double a = std::asin(std::sin(2.0 * kPi * std::exp(mu1) * x)) *
                   std::exp(-kPi * std::abs(x - mu1 / 2.0));
  const double b = std::asin(std::sin(std::exp(kPi - mu2) * x)) *
                   std::exp(-kPi * std::abs(x + mu2 / 2.0));
  return std::exp(x + 2.0 * mu1 + 3.0 * mu2) * (a + b);
}

double family_1d(double x, double mu) {
  check_domain(x >= -1.0 && x <= 1.0, "x outside [-1, 1]");
  check_domain(mu >= 1.0 && mu <= kPi, "mu outside [1, pi]");
  return (1.0 - x) * std::cos(3.0 * kPi * mu * (x + 1.0)) *
         std::exp(-mu * (1.0 + x));
}

double family_1d_perturbed(double x, double mu) {
  double v = family_1d(x, mu);
  if (x > (mu - 1.0) / 1000.0 && x < mu / 1000.0) v += 1.0;
  return v;
}

double family_2d(double x1, double x2, double mu1, double mu2) {
  check_domain(x1 >= 0.0 && x1 <= 1.0 && x2 >= 0.0 && x2 <= 1.0,
               "x outside [0, 1]^2");
  check_domain(mu1 >= kPi / 3.0 && mu1 <= 2.0 * kPi && mu2 >= kPi / 3.0 &&
                   mu2 <= 2.0 * kPi,
               "mu outside [pi/3, 2 pi]^2");
  return std::sin(x1 * mu1) * std::cos(x2 * mu2) *
         std::exp(std::abs(x1) * mu1 + std::abs(x2) * mu2);
}

double family_3d(double x1, double x2, double x3, double mu1, double mu2,
                 double mu3) {
  check_domain(x1 >= 0.0 && x1 <= 1.0 && x2 >= 0.0 && x2 <= 1.0 &&
                   x3 >= 0.0 && x3 <= 1.0,
               "x outside [0, 1]^3");
  check_domain(mu1 >= 0.0 && mu1 <= 1.0 && mu2 >= 0.0 && mu2 <= 1.0 &&
                   mu3 >= 0.0 && mu3 <= 1.0,
               "mu outside [0, 1]^3");
  return (1.0 - x1) * (1.0 - x2) * (1.0 - x3) *
         std::sin(kPi * (x1 * mu1 + x2 * mu2 + x3 * mu3)) *
         std::exp((x1 + mu1) * (x2 + mu2) * (x3 + mu3));
}

const std::vector<FamilyInfo>& family_registry() {
  static const std::vector<FamilyInfo> registry = {
      {"2param", 1, 2,
       {{{-2.0, 2.0, 100000}}, {{0.0, 2.0, 32}, {0.0, 2.0, 32}}}},
      {"1d", 1, 1, {{{-1.0, 1.0, 100000}}, {{1.0, kPi, 500}}}},
      {"1d_perturbed", 1, 1, {{{-1.0, 1.0, 100000}}, {{1.0, kPi, 500}}}},
      {"2d", 2, 2,
       {{{0.0, 1.0, 300}, {0.0, 1.0, 300}},
        {{kPi / 3.0, 2.0 * kPi, 25}, {kPi / 3.0, 2.0 * kPi, 25}}}},
      {"3d", 3, 3,
       {{{0.0, 1.0, 50}, {0.0, 1.0, 50}, {0.0, 1.0, 50}},
        {{0.0, 1.0, 8}, {0.0, 1.0, 8}, {0.0, 1.0, 8}}}},
  };
  return registry;
}

const FamilyInfo& family_info(const std::string& name) {
  for (const auto& info : family_registry())
    if (info.name == name) return info;
  throw std::invalid_argument("unknown family: " + name);
}

namespace {

// Flattens multi-axis grids with dimension 0 varying fastest.
std::vector<std::vector<double>> flatten_grid(
    const std::vector<GridAxis>& axes) {
  std::vector<std::vector<double>> per_axis;
  per_axis.reserve(axes.size());
  std::size_t total = 1;
  for (const auto& a : axes) {
    per_axis.push_back(grid_points(a));
    total *= per_axis.back().size();
  }
  std::vector<std::vector<double>> tuples(total,
                                          std::vector<double>(axes.size()));
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (std::size_t d = 0; d < axes.size(); ++d) {
      tuples[flat][d] = per_axis[d][rest % per_axis[d].size()];
      rest /= per_axis[d].size();
    }
  }
  return tuples;
}

}  // namespace

TrainingSet sample_family(const std::string& name, const GridSpec& grid,
                          SpaceSpec space) {
  const FamilyInfo& info = family_info(name);
  if (static_cast<int>(grid.spatial.size()) != info.spatial_dims ||
      static_cast<int>(grid.parametric.size()) != info.parametric_dims)
    throw std::invalid_argument("sample_family: grid dimensionality mismatch");

  const auto xs = flatten_grid(grid.spatial);
  const auto mus = flatten_grid(grid.parametric);

  Matrix values(xs.size(), mus.size());
  parallel_for(0, static_cast<std::int64_t>(mus.size()), [&](std::int64_t j) {
    const auto& mu = mus[j];
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto& x = xs[i];
      double v = 0.0;
      if (name == "2param")
        v = family_2param(x[0], mu[0], mu[1]);
      else if (name == "1d")
        v = family_1d(x[0], mu[0]);
      else if (name == "1d_perturbed")
        v = family_1d_perturbed(x[0], mu[0]);
      else if (name == "2d")
        v = family_2d(x[0], x[1], mu[0], mu[1]);
      else
        v = family_3d(x[0], x[1], x[2], mu[0], mu[1], mu[2]);
      values(i, j) = v;
    }
  });

  TrainingSet ts(std::move(values), space, name);
  ts.column_labels.reserve(mus.size());
  for (const auto& mu : mus) {
    std::string label = fmt(mu[0]);
    for (std::size_t d = 1; d < mu.size(); ++d) label += ";" + fmt(mu[d]);
    ts.column_labels.push_back(std::move(label));
  }
  return ts;
}

TrainingSet gen_random_set(std::uint64_t seed, int N_h, int d, int N_tr,
                           SpaceSpec s) {
  if (N_h < 1 || d < 1 || N_tr < 1)
    throw std::invalid_argument("gen_random_set: sizes must be positive");
  if (d > N_h)
    throw std::invalid_argument("gen_random_set: d must not exceed N_h");
  Rng rng(subseed(seed, stream::snapshots));
  Matrix directions(N_h, d);
  for (int m = 0; m < d; ++m)
    for (int k = 0; k < N_h; ++k) directions(k, m) = rng.gaussian();
  Matrix weights(d, N_tr);
  for (int n = 0; n < N_tr; ++n)
    for (int m = 0; m < d; ++m) weights(m, n) = rng.uniform(-1.0, 1.0);
  TrainingSet ts(directions * weights, s, "random");
  return ts;
}

TrainingSet add_noise(const TrainingSet& ts, const NoiseSpec& spec,
                      const GridSpec* grid) {
  if (spec.mode == NoiseSpec::Mode::indicator_shift) {
    if (!grid || grid->spatial.size() != 1 || grid->parametric.size() != 1)
      throw std::domain_error(
          "add_noise: indicator_shift needs the one-dimensional grid");
    const auto xs = grid_points(grid->spatial[0]);
    const auto mus = grid_points(grid->parametric[0]);
    if (static_cast<Eigen::Index>(xs.size()) != ts.dim() ||
        static_cast<int>(mus.size()) != ts.size())
      throw std::domain_error("add_noise: grid does not match the set");
    TrainingSet out = ts;
    for (int j = 0; j < out.size(); ++j) {
      const double mu = mus[j];
      for (std::size_t i = 0; i < xs.size(); ++i)
        if (xs[i] > (mu - 1.0) / 1000.0 && xs[i] < mu / 1000.0)
          out.vectors(i, j) += 1.0;
    }
    return out;
  }

  if (!(spec.fraction >= 0.0 && spec.fraction <= 1.0))
    throw std::domain_error("add_noise: fraction outside [0, 1]");
  const std::uint64_t total =
      static_cast<std::uint64_t>(ts.dim()) * static_cast<std::uint64_t>(ts.size());
  const std::uint64_t k =
      static_cast<std::uint64_t>(spec.fraction * static_cast<double>(total));
  if (spec.fraction > 0.0 && k == 0)
    throw std::domain_error("add_noise: fraction selects no coordinate");
  TrainingSet out = ts;
  if (k == 0) return out;

  double ref = 0.0;
  if (spec.magnitude_ref == NoiseSpec::Ref::avg)
    ref = ts.vectors.array().abs().mean();
  else
    ref = ts.vectors.array().abs().maxCoeff();

  // Floyd's sampling: k distinct linear indices (column-major), insertion
  // order fixed by the seeded stream
  Rng rng(subseed(spec.seed, stream::noise));
  std::unordered_set<std::uint64_t> chosen;
  std::vector<std::uint64_t> order;
  order.reserve(k);
  for (std::uint64_t j = total - k; j < total; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    const std::uint64_t idx = chosen.count(t) ? j : t;
    chosen.insert(idx);
    order.push_back(idx);
  }
  for (const std::uint64_t idx : order) {
    const Eigen::Index col = static_cast<Eigen::Index>(idx / ts.dim());
    const Eigen::Index row = static_cast<Eigen::Index>(idx % ts.dim());
    out.vectors(row, col) = rng.uniform(0.0, ref);
  }
  return out;
}

std::vector<double> counterexample_default_a(int size) {
  std::vector<double> a(size);
  for (int n = 0; n < size; ++n) a[n] = std::pow(2.0, -n / 4.0);
  return a;
}

double counterexample_alpha_for(double eps, std::span<const double> a,
                                int target_M) {
  if (target_M < 1 || target_M >= static_cast<int>(a.size()))
    throw std::domain_error("counterexample: target M outside the sequence");
  const double q = 2.0 * (1.0 - eps);
  return a[target_M] / std::pow(q, target_M);
}

CounterexampleSet counterexample_set(double eps, std::span<const double> a,
                                     double alpha, int size) {
  if (!(eps > 0.0 && eps < 0.5))
    throw std::domain_error("counterexample: eps must lie in (0, 1/2)");
  if (size < 1 || static_cast<int>(a.size()) < size)
    throw std::domain_error("counterexample: need a_0..a_{size-1}");
  for (int n = 0; n + 1 < size; ++n)
    if (!(a[n] > 0.0 && a[n + 1] < a[n]))
      throw std::domain_error("counterexample: a must decrease and stay positive");
  if (!(alpha > 0.0 && alpha < a[0]))
    throw std::domain_error("counterexample: need 0 < alpha < a_0");

  const int N_h = size + 1;
  Matrix m = Matrix::Zero(N_h, size + 1);
  m(0, 0) = alpha;  // alpha f*, f* = e_0
  for (int n = 0; n < size; ++n) {
    Vector f = Vector::Zero(N_h);
    f[0] = -eps / std::pow(2.0, n);
    for (int k = 1; k <= n; ++k) f[k] = -eps / std::pow(2.0, n + 1 - k);
    f[n + 1] = 1.0 - eps;
    m.col(n + 1) = a[n] * f;
  }

  const double q = 2.0 * (1.0 - eps);
  int M = -1;
  for (int n = 1; n < size; ++n) {
    if (alpha >= a[n] / std::pow(q, n)) {
      M = n;
      break;
    }
  }
  if (M < 0)
    throw std::domain_error(
        "counterexample: threshold M exceeds the truncated sequence");

  CounterexampleSet out{TrainingSet(std::move(m), SpaceSpec::l1(),
                                    "counterexample"),
                        M, eps, alpha,
                        std::vector<double>(a.begin(), a.begin() + size)};
  out.set.column_labels.push_back("alpha*fstar");
  for (int n = 0; n < size; ++n)
    out.set.column_labels.push_back("a" + std::to_string(n) + "*f" +
                                    std::to_string(n));
  return out;
}

}  // namespace greedyrb
