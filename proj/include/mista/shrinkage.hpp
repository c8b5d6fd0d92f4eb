#pragma once
/*
 * Scalar shrinkage (thresholding) maps for penalized least squares.
 *
 * shrink(b, {c, p}) returns the minimizer of
 *
 *     m(x) = x^2 - 2 b x + c |x|^p,             c > 0, 1 <= p <= 2,
 *
 * and shrink(b, terms) the minimizer of the multi-term objective
 *
 *     m(x) = x^2 - 2 b x + sum_i c_i |x|^{p_i}.
 *
 * For p = 1 this is soft thresholding with dead zone [-c/2, c/2]; for
 * p > 1 it inverts the strictly increasing odd map
 *
 *     x  |->  x + (c p / 2) sign(x) |x|^{p-1}.
 *
 * In the multi-term case the terms with p_i = 1 contribute a dead zone
 * of half-width tau = sum c_i / 2 and the remaining terms a smooth,
 * strictly increasing branch that is inverted by safeguarded
 * Newton-bisection. All maps are odd, monotone and nonexpansive.
 */

#include <span>

namespace mista {

struct PenaltyTerm {
  double weight;    // c > 0; any group multiplier is already folded in
  double exponent;  // p in [1, 2]
};

// Throws std::invalid_argument on weights <= 0 or exponents outside [1, 2].
void validate(const PenaltyTerm& term);
void validate(std::span<const PenaltyTerm> terms);

// x + (c p / 2) sign(x) |x|^{p-1}. Maps shrink(b) back to b on the p > 1
// branch; total on the reals, odd, zero at zero.
double shrink_inverse(double x, const PenaltyTerm& term);

// Minimizer of x^2 - 2 b x + c |x|^p. Roots are resolved well below
// 1e-12 absolute error (the bracket is refined to machine resolution).
double shrink(double b, const PenaltyTerm& term);

// Minimizer of x^2 - 2 b x + sum_i c_i |x|^{p_i}; terms must be nonempty.
// With a single term this reduces exactly to the overload above.
double shrink(double b, std::span<const PenaltyTerm> terms);

struct ShrinkResidual {
  double residual;  // |shrink(b) - b|
  double bound;     // (c p / 2) |b|^{p-1}, always >= residual
};

ShrinkResidual shrink_residual_bound(double b, const PenaltyTerm& term);

}  // namespace mista
