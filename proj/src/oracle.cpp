#include "mista/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace mista {
namespace oracle {

namespace {

void check(const GridSpec& g) {
  if (!(g.lo < g.hi))
    throw std::invalid_argument("oracle grid: lo must be below hi");
  if (g.points < 101)
    throw std::invalid_argument("oracle grid: needs at least 101 points");
  if (g.refine_rounds < 2)
    throw std::invalid_argument("oracle grid: needs at least 2 refine rounds");
}

template <class F>
double scan(F&& f, double lo, double hi, int points, double& best_val) {
  double best_x = lo;
  best_val = f(lo);
  for (int i = 1; i < points; ++i) {
    const double x = lo + (hi - lo) * i / (points - 1);
    const double v = f(x);
    if (v < best_val) {
      best_val = v;
      best_x = x;
    }
  }
  return best_x;
}

// Unimodal refinement: after each coarse scan the window shrinks 10x
// around the incumbent, then a golden-section pass polishes the final
// bracket to near machine resolution.
template <class F>
double refine1d(F&& f, const GridSpec& grid) {
  double lo = grid.lo, hi = grid.hi;
  double best_val;
  double best = scan(f, lo, hi, grid.points, best_val);
  for (int r = 0; r < grid.refine_rounds; ++r) {
    const double w = (hi - lo) / 10.0;
    lo = std::max(lo, best - 0.5 * w);
    hi = std::min(hi, best + 0.5 * w);
    best = scan(f, lo, hi, grid.points, best_val);
  }
  const double spacing = (hi - lo) / (grid.points - 1);
  double a = std::max(grid.lo, best - spacing);
  double b = std::min(grid.hi, best + spacing);
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a) + std::abs(b));
       ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double minimize_scalar(double b, std::span<const PenaltyTerm> terms,
                       const GridSpec& grid) {
  check(grid);
  validate(terms);
  auto m = [&](double x) {
    double v = x * x - 2.0 * b * x;
    for (const auto& t : terms)
      v += t.weight * std::pow(std::abs(x), t.exponent);
    return v;
  };
  return refine1d(m, grid);
}

double minimize_scalar(double b, std::span<const PenaltyTerm> terms) {
  const double r = std::abs(b) + 1.0;
  return minimize_scalar(b, terms, GridSpec{-r, r});
}

Vec minimize_separable(const Problem& prob) {
  const auto diag = prob.op.diagonal();
  if (!diag)
    throw std::invalid_argument(
        "separable oracle: operator with known diagonal required");
  Vec out(prob.data.size());
  std::vector<PenaltyTerm> scaled;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    const double k = (*diag)[i];
    const auto terms = prob.penalty.terms_at(static_cast<std::size_t>(i));
    if (k == 0.0) {
      out[i] = 0.0;  // the penalty alone is minimized at zero
      continue;
    }
    scaled.assign(terms.begin(), terms.end());
    for (auto& t : scaled) t.weight /= k * k;
    out[i] = minimize_scalar(prob.data[i] / k, scaled);
  }
  return out;
}

Vec minimize_grid(const Problem& prob, const GridSpec& grid) {
  check(grid);
  const std::size_t dim = prob.op.domain_dim();
  if (dim > 2)
    throw std::invalid_argument("grid oracle: dimension must be <= 2");

  if (dim == 1) {
    Vec f(1);
    auto obj = [&](double x) {
      f[0] = x;
      return objective(f, prob);
    };
    Vec out(1);
    out[0] = refine1d(obj, grid);
    return out;
  }

  Vec f(2);
  auto obj = [&](double x, double y) {
    f[0] = x;
    f[1] = y;
    return objective(f, prob);
  };
  double lox = grid.lo, hix = grid.hi, loy = grid.lo, hiy = grid.hi;
  double bx = lox, by = loy;
  double best = obj(bx, by);
  for (int r = 0; r <= grid.refine_rounds; ++r) {
    if (r > 0) {
      const double wx = (hix - lox) / 10.0, wy = (hiy - loy) / 10.0;
      lox = std::max(grid.lo, bx - 0.5 * wx);
      hix = std::min(grid.hi, bx + 0.5 * wx);
      loy = std::max(grid.lo, by - 0.5 * wy);
      hiy = std::min(grid.hi, by + 0.5 * wy);
    }
    for (int i = 0; i < grid.points; ++i) {
      const double x = lox + (hix - lox) * i / (grid.points - 1);
      for (int j = 0; j < grid.points; ++j) {
        const double y = loy + (hiy - loy) * j / (grid.points - 1);
        const double v = obj(x, y);
        if (v < best) {
          best = v;
          bx = x;
          by = y;
        }
      }
    }
  }
  Vec out(2);
  out[0] = bx;
  out[1] = by;
  return out;
}

Vec minimize_grid(const Problem& prob) {
  // Phi(f*) <= Phi(0) = ||g||^2 bounds every coordinate through its
  // cheapest penalty term.
  const double p0 = prob.data.squaredNorm();
  const double q = p0 / prob.penalty.min_weight();
  const double box = std::max({1.0, q, std::sqrt(q)}) + 1.0;
  return minimize_grid(prob, GridSpec{-box, box, 201, 7});
}

}  // namespace oracle
}  // namespace mista
