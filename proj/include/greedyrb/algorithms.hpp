#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "greedyrb/projector.hpp"
#include "greedyrb/space.hpp"

namespace greedyrb {

// Ordered snapshot collection: one vector per column.
struct TrainingSet {
  Matrix vectors;  // N_h x N_tr
  SpaceSpec space;
  std::string label;
  std::vector<std::string> column_labels;  // optional, used by CSV export

  TrainingSet(Matrix m, SpaceSpec s, std::string lbl);

  Eigen::Index dim() const { return vectors.rows(); }
  int size() const { return static_cast<int>(vectors.cols()); }
};

struct GreedyConfig {
  int max_iterations = 30;
  double weakness = 1.0;     // gamma in (0, 1]; 1 recovers the strict argmax
  double stop_rel = 1e-13;   // exhaustion threshold relative to tau_0
  double oga_tol = 1e-9;     // inner distance-solver tolerance
  std::uint64_t seed = 0;    // echoed into reports; greedy runs are exact
};

struct TraceRow {
  int iteration;
  int selected;       // training index, -1 for POD
  double score;       // tau_n / sigma_n / singular value
  double cputime_s;   // cumulative process CPU since the run started
};

struct Trace {
  std::vector<TraceRow> rows;
  std::vector<double> max_scores;  // per-iteration best score (weak-rule audit)
  double final_max_score = 0.0;    // residual max when the run stopped
  std::vector<std::string> warnings;
};

struct GreedyResult {
  ReducedBasis basis;
  Trace trace;
};

// Raised when an inner solve fails for a specific training element.
struct IterationError : std::runtime_error {
  IterationError(int iteration_, int element_, const std::string& what_);
  int iteration;
  int element;
};

// Natural greedy: scores every element by |R_n(f)| through the hierarchical
// residual cache, selects the first index (ascending) whose score reaches
// weakness * max, and appends g_n = R_n(f_n) / |R_n(f_n)|. Stops at
// max_iterations or when the best score falls to stop_rel * tau_0.
GreedyResult run_nga(const TrainingSet& ts, const GreedyConfig& cfg);

// Orthogonal greedy: scores by the true best-approximation distance to the
// current subspace; basis vectors are the normalized projection residuals.
GreedyResult run_oga(const TrainingSet& ts, const GreedyConfig& cfg);

// Empirical interpolation in lp-infinity: maintains interpolation
// coordinates z_k, selects by the max-norm interpolation residual, and
// normalizes each basis vector to value 1 at its own z_k.
GreedyResult run_eim(const TrainingSet& ts, const GreedyConfig& cfg);

// Leading left singular vectors of the snapshot matrix. Falls back to the
// eigendecomposition of the N_tr x N_tr Gram matrix when the snapshot
// matrix exceeds dense_budget entries (mathematically equivalent; the
// choice is recorded in the trace warnings).
GreedyResult run_pod(const TrainingSet& ts, int M,
                     std::int64_t dense_budget = 4'000'000);

// Interpolant coefficients beta with sum_k beta_k h_k(z_m) = f(z_m) for
// m < n, solved by forward substitution on the unit lower-triangular system.
Vector eim_interpolation_coeffs(const ReducedBasis& basis, const Vector& f,
                                int n);

}  // namespace greedyrb
