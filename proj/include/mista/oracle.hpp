#pragma once
/*
 * Brute-force reference minimizers, kept deliberately independent of the
 * shrinkage/solver code paths they are used to check:
 *
 *   minimize_scalar    argmin of x^2 - 2 b x + sum c_i |x|^{p_i} by grid
 *                      scan, 10x zoom refinement and a golden-section
 *                      polish (the objective is strictly convex).
 *   minimize_separable per-coordinate reduction for diagonal operators:
 *                      (k f - g)^2 + sum c |f|^p completes the square to
 *                      k^2 [ f^2 - 2 (g/k) f + sum (c/k^2) |f|^p ].
 *   minimize_grid      tensor grid search for coupled problems of
 *                      dimension <= 2.
 *
 * Comparisons against these oracles should use objective values, not
 * argument vectors: pure p = 1 problems with a nontrivial nullspace have
 * non-unique minimizers.
 */

#include "mista/model.hpp"

namespace mista {
namespace oracle {

struct GridSpec {
  double lo;
  double hi;
  int points = 201;        // >= 101
  int refine_rounds = 6;   // >= 2
};

// The minimizer satisfies |x*| <= |b| (nonexpansiveness through 0), so
// the default bracket is +-(|b| + 1).
double minimize_scalar(double b, std::span<const PenaltyTerm> terms,
                       const GridSpec& grid);
double minimize_scalar(double b, std::span<const PenaltyTerm> terms);

// Requires an operator with known diagonal; rejects anything else.
Vec minimize_separable(const Problem& prob);

// Any minimizer has |f_gamma| bounded through Phi(f*) <= Phi(0) = ||g||^2;
// this box is used by the default-grid overload.
Vec minimize_grid(const Problem& prob, const GridSpec& grid);
Vec minimize_grid(const Problem& prob);

}  // namespace oracle
}  // namespace mista
