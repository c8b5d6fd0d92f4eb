#pragma once
/*
 * Thresholded Landweber iteration
 *
 *     f^{n+1} = S( f^n + K*(g - K f^n) )
 *
 * where S applies the per-index shrinkage map of the penalty. Each step
 * minimizes the anchored surrogate exactly, so the objective is
 * nonincreasing and the iterates converge to a minimizer of Phi as long
 * as the operator norm is strictly below 1 (enforced).
 */

#include <cstddef>
#include <filesystem>
#include <vector>

#include "mista/model.hpp"

namespace mista {

struct StopRule {
  std::size_t max_iters = 100000;
  double step_tol = 1e-10;  // stop once ||f^{n+1} - f^n|| <= step_tol
};

enum class StopReason { step_tolerance, max_iterations };

struct TraceRow {
  std::size_t iter;      // n
  double objective;      // Phi(f^n)
  double surrogate;      // Phi_s(f^{n+1}; f^n)
  double step_norm;      // ||f^{n+1} - f^n||
  double iterate_norm;   // ||f^n||
};

struct SolveTrace {
  std::vector<TraceRow> rows;
  std::size_t iterations = 0;
  StopReason reason = StopReason::max_iterations;
  double final_objective = 0.0;
  // Upper bound on every iterate norm, derived from Phi(f^0) and the
  // smallest penalty weight.
  double iterate_bound = 0.0;

  // Largest positive jump in the objective column (0 for a clean run).
  double max_objective_increase() const;
};

struct SolveResult {
  Vec minimizer;
  SolveTrace trace;
};

// One surrogate-minimization step. Requires norm_bound() < 1.
Vec step(const Vec& f, const Problem& prob);

// Iterates step() until the stop rule fires. trace_stride > 1 keeps
// every stride-th row (the final row is always kept).
SolveResult solve(const Vec& f0, const Problem& prob, const StopRule& stop,
                  std::size_t trace_stride = 1);

// ||step(f) - f||; zero certifies f as a minimizer.
double fixed_point_residual(const Vec& f, const Problem& prob);

struct DecompositionResult {
  Vec u;
  Vec v;
  SolveTrace trace;
};

// Minimizes ||K(u+v) - g||^2 + penalty_u(u) + penalty_v(v) by running
// solve() on the stacked sum-space problem; both blocks shrink the same
// back-projected residual each iteration.
DecompositionResult solve_decomposition(const Vec& u0, const Vec& v0,
                                        const LinearOp& k, const Vec& g,
                                        const PenaltySpec& u_spec,
                                        const PenaltySpec& v_spec,
                                        const StopRule& stop);

// CSV columns: iter,objective,surrogate,step_norm,iterate_norm.
void write_trace_csv(const SolveTrace& trace,
                     const std::filesystem::path& path);

}  // namespace mista
