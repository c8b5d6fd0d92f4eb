#include "mista/solver.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mista/io.hpp"

namespace mista {

namespace {

void require_contractive(const Problem& prob) {
  if (!(prob.op.norm_bound() < 1.0))
    throw std::invalid_argument(
        "solver: operator norm certificate must be < 1 (renormalize first)");
}

Vec apply_shrinkage(const Vec& h, const PenaltySpec& spec) {
  Vec out(h.size());
  for (Eigen::Index i = 0; i < h.size(); ++i)
    out[i] = shrink(h[i], spec.terms_at(static_cast<std::size_t>(i)));
  return out;
}

// Every coordinate obeys c |f_gamma|^p <= Phi(f^n) <= Phi(f^0), which
// bounds ||f^n|| by a constant depending only on Phi(f^0) and the
// smallest weight at each index.
double iterate_norm_bound(double phi0, const PenaltySpec& spec) {
  double sq = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto& t = spec.terms_at(i)[0];
    sq += std::pow(phi0 / t.weight, 2.0 / t.exponent);
  }
  return std::sqrt(sq);
}

}  // namespace

double SolveTrace::max_objective_increase() const {
  double worst = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    worst = std::max(worst, rows[i].objective - rows[i - 1].objective);
  if (!rows.empty())
    worst = std::max(worst, final_objective - rows.back().objective);
  return worst;
}

Vec step(const Vec& f, const Problem& prob) {
  require_contractive(prob);
  if (static_cast<std::size_t>(f.size()) != prob.op.domain_dim())
    throw std::invalid_argument("step: coefficient length mismatch");
  const Vec h = f + prob.op.adjoint(prob.data - prob.op.forward(f));
  return apply_shrinkage(h, prob.penalty);
}

SolveResult solve(const Vec& f0, const Problem& prob, const StopRule& stop,
                  std::size_t trace_stride) {
  require_contractive(prob);
  if (static_cast<std::size_t>(f0.size()) != prob.op.domain_dim())
    throw std::invalid_argument("solve: coefficient length mismatch");
  if (stop.max_iters < 1)
    throw std::invalid_argument("solve: max_iters must be >= 1");
  if (trace_stride < 1) trace_stride = 1;

  SolveTrace trace;
  Vec f = f0;
  Vec kf = prob.op.forward(f);
  double pen = penalty_value(f, prob.penalty);
  trace.iterate_bound =
      iterate_norm_bound((kf - prob.data).squaredNorm() + pen, prob.penalty);
  trace.reason = StopReason::max_iterations;

  for (std::size_t n = 0; n < stop.max_iters; ++n) {
    const Vec h = f + prob.op.adjoint(prob.data - kf);
    const Vec next = apply_shrinkage(h, prob.penalty);
    const Vec knext = prob.op.forward(next);

    const double obj = (kf - prob.data).squaredNorm() + pen;
    const double pen_next = penalty_value(next, prob.penalty);
    const double obj_next = (knext - prob.data).squaredNorm() + pen_next;
    const double step_norm = (next - f).norm();
    const double surr = obj_next + (next - f).squaredNorm() -
                        (knext - kf).squaredNorm();

    const bool done = step_norm <= stop.step_tol || n + 1 == stop.max_iters;
    if (n % trace_stride == 0 || done)
      trace.rows.push_back({n, obj, surr, step_norm, f.norm()});

    f = next;
    kf = knext;
    pen = pen_next;
    trace.iterations = n + 1;
    if (step_norm <= stop.step_tol) {
      trace.reason = StopReason::step_tolerance;
      break;
    }
  }
  trace.final_objective = (kf - prob.data).squaredNorm() + pen;
  return {std::move(f), std::move(trace)};
}

double fixed_point_residual(const Vec& f, const Problem& prob) {
  return (step(f, prob) - f).norm();
}

DecompositionResult solve_decomposition(const Vec& u0, const Vec& v0,
                                        const LinearOp& k, const Vec& g,
                                        const PenaltySpec& u_spec,
                                        const PenaltySpec& v_spec,
                                        const StopRule& stop) {
  if (u0.size() != v0.size())
    throw std::invalid_argument("decompose: u0/v0 length mismatch");
  const std::size_t n = k.domain_dim();
  if (static_cast<std::size_t>(u0.size()) != n)
    throw std::invalid_argument("decompose: block length mismatch");

  Problem stacked(sum_space_op(k), g, append(u_spec, v_spec));
  Vec f0(2 * n);
  f0.head(n) = u0;
  f0.tail(n) = v0;
  auto res = solve(f0, stacked, stop);
  return {res.minimizer.head(n), res.minimizer.tail(n),
          std::move(res.trace)};
}

void write_trace_csv(const SolveTrace& trace,
                     const std::filesystem::path& path) {
  std::ostringstream out;
  out << "iter,objective,surrogate,step_norm,iterate_norm\n";
  for (const auto& r : trace.rows)
    out << r.iter << ',' << format_double(r.objective) << ','
        << format_double(r.surrogate) << ',' << format_double(r.step_norm)
        << ',' << format_double(r.iterate_norm) << '\n';
  write_file_atomic(path, out.str());
}

}  // namespace mista
