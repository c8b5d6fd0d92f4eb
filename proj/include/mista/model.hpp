#pragma once
/*
 * Problem model: minimize over coefficient vectors f
 *
 *     Phi(f) = ||K f - g||^2 + sum_gamma sum_i c_i,gamma |f_gamma|^{p_i}
 *
 * together with the anchored surrogate
 *
 *     Phi_s(f; a) = Phi(f) + ||f - a||^2 - ||K (f - a)||^2,
 *
 * which dominates Phi whenever ||K|| <= 1 and decouples across
 * coordinates. The iteration in solver.hpp minimizes the surrogate
 * exactly at each step.
 */

#include "mista/operators.hpp"
#include "mista/penalty.hpp"

namespace mista {

struct Problem {
  LinearOp op;         // K, with a certified norm bound
  Vec data;            // g in the codomain
  PenaltySpec penalty;

  Problem(LinearOp k, Vec g, PenaltySpec spec);
};

double penalty_value(const Vec& f, const PenaltySpec& spec);
double objective(const Vec& f, const Problem& prob);
double surrogate(const Vec& f, const Vec& anchor, const Problem& prob);

struct Renormalized {
  Problem problem;
  double scale;  // divisor s applied to operator and data (1 = unchanged)
};

// When the norm certificate is >= 1, divides operator and data by
// s = norm_bound / 0.999 and every penalty weight by s^2. The scaled
// objective equals the original divided by s^2, so minimizers coincide
// and the scaled certificate is exactly 0.999.
Renormalized renormalize(const Problem& prob);

}  // namespace mista
