#include "mista/shrinkage.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace mista {

namespace {

// Increasing branch target for b > 0 after sign factoring:
//   G(x) = x + tau + 0.5 * sum_{p_i > 1} p_i c_i x^{p_i - 1},   x >= 0,
// where tau collects the p = 1 terms. G(0+) = tau and G' >= 1.
struct Branch {
  double tau;
  std::span<const PenaltyTerm> smooth;  // exponent > 1 only

  double value(double x) const {
    double v = x + tau;
    for (const auto& t : smooth)
      v += 0.5 * t.weight * t.exponent * std::pow(x, t.exponent - 1.0);
    return v;
  }
  double slope(double x) const {
    double s = 1.0;
    for (const auto& t : smooth)
      s += 0.5 * t.weight * t.exponent * (t.exponent - 1.0) *
           std::pow(x, t.exponent - 2.0);
    return s;  // may be +inf at x = 0 when some p < 2
  }
};

// Solve G(x) = b on (0, hi]. Safeguarded Newton: every step stays inside
// the current bracket, otherwise it bisects; terminates at float
// resolution (far tighter than the documented 1e-12).
double invert_branch(const Branch& g, double b, double hi) {
  double lo = 0.0;
  double x = 0.5 * (lo + hi);
  double dx_old = hi - lo;
  double dx = dx_old;
  double f = g.value(x) - b;
  double df = g.slope(x);

  for (int it = 0; it < 200; ++it) {
    const bool newton_ok =
        std::isfinite(df) &&
        ((x - hi) * df - f) * ((x - lo) * df - f) < 0.0 &&
        std::abs(2.0 * f) < std::abs(dx_old * df);
    if (newton_ok) {
      dx_old = dx;
      dx = f / df;
      const double prev = x;
      x -= dx;
      if (x == prev) break;
    } else {
      dx_old = dx;
      dx = 0.5 * (hi - lo);
      x = lo + dx;
      if (x == lo || x == hi) break;
    }
    if (std::abs(dx) < 1e-15 * (1.0 + std::abs(x))) break;
    f = g.value(x) - b;
    df = g.slope(x);
    if (f < 0.0)
      lo = x;
    else
      hi = x;
  }
  return x;
}

// Core map for b >= 0; terms are assumed valid.
double shrink_nonneg(double b, std::span<const PenaltyTerm> terms,
                     std::span<PenaltyTerm> smooth_buf) {
  double tau = 0.0;
  std::size_t n_smooth = 0;
  for (const auto& t : terms) {
    if (t.exponent == 1.0)
      tau += 0.5 * t.weight;
    else
      smooth_buf[n_smooth++] = t;
  }
  if (b <= tau) return 0.0;
  if (n_smooth == 0) return b - tau;  // pure soft threshold

  const Branch g{tau, smooth_buf.subspan(0, n_smooth)};
  // G(x) >= x + tau, so the root lies in (0, b - tau].
  return invert_branch(g, b, b - tau);
}

}  // namespace

void validate(const PenaltyTerm& term) {
  if (!(term.weight > 0.0) || !std::isfinite(term.weight))
    throw std::invalid_argument("penalty term: weight must be positive");
  if (!(term.exponent >= 1.0 && term.exponent <= 2.0))
    throw std::invalid_argument("penalty term: exponent must lie in [1, 2]");
}

void validate(std::span<const PenaltyTerm> terms) {
  if (terms.empty())
    throw std::invalid_argument("penalty term list must be nonempty");
  for (const auto& t : terms) validate(t);
}

double shrink_inverse(double x, const PenaltyTerm& term) {
  validate(term);
  if (x == 0.0) return 0.0;
  const double s = x > 0.0 ? 1.0 : -1.0;
  return x + 0.5 * term.weight * term.exponent * s *
                 std::pow(std::abs(x), term.exponent - 1.0);
}

double shrink(double b, const PenaltyTerm& term) {
  return shrink(b, std::span<const PenaltyTerm>{&term, 1});
}

double shrink(double b, std::span<const PenaltyTerm> terms) {
  validate(terms);
  if (b == 0.0) return 0.0;
  // Odd by construction: factor out the sign and work on |b|.
  constexpr std::size_t kStack = 16;
  PenaltyTerm local[kStack];
  std::vector<PenaltyTerm> heap;
  std::span<PenaltyTerm> buf;
  if (terms.size() <= kStack) {
    buf = std::span<PenaltyTerm>{local, terms.size()};
  } else {
    heap.resize(terms.size());
    buf = heap;
  }
  const double mag = shrink_nonneg(std::abs(b), terms, buf);
  return b > 0.0 ? mag : -mag;
}

ShrinkResidual shrink_residual_bound(double b, const PenaltyTerm& term) {
  const double s = shrink(b, term);
  const double bound = 0.5 * term.weight * term.exponent *
                       std::pow(std::abs(b), term.exponent - 1.0);
  return {std::abs(s - b), bound};
}

}  // namespace mista
