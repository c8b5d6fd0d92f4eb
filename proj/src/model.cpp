#include "mista/model.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace mista {

Problem::Problem(LinearOp k, Vec g, PenaltySpec spec)
    : op(std::move(k)), data(std::move(g)), penalty(std::move(spec)) {
  if (!op) throw std::invalid_argument("problem: operator required");
  if (static_cast<std::size_t>(data.size()) != op.codomain_dim())
    throw std::invalid_argument("problem: data length must match codomain");
  if (penalty.size() != op.domain_dim())
    throw std::invalid_argument("problem: penalty length must match domain");
  if (!data.allFinite())
    throw std::invalid_argument("problem: data must be finite");
}

double penalty_value(const Vec& f, const PenaltySpec& spec) {
  return penalty_value(std::span<const double>{f.data(),
                                               static_cast<std::size_t>(f.size())},
                       spec);
}

double objective(const Vec& f, const Problem& prob) {
  if (static_cast<std::size_t>(f.size()) != prob.op.domain_dim())
    throw std::invalid_argument("objective: coefficient length mismatch");
  return (prob.op.forward(f) - prob.data).squaredNorm() +
         penalty_value(f, prob.penalty);
}

double surrogate(const Vec& f, const Vec& anchor, const Problem& prob) {
  if (f.size() != anchor.size())
    throw std::invalid_argument("surrogate: anchor length mismatch");
  const Vec diff = f - anchor;
  return objective(f, prob) + diff.squaredNorm() -
         prob.op.forward(diff).squaredNorm();
}

Renormalized renormalize(const Problem& prob) {
  const double nb = prob.op.norm_bound();
  if (!std::isfinite(nb))
    throw std::invalid_argument("renormalize: norm certificate unavailable");
  if (nb < 1.0) return {prob, 1.0};
  const double s = nb / 0.999;
  Problem scaled(scaled_op(prob.op, 1.0 / s), prob.data / s,
                 prob.penalty.scaled_weights(1.0 / (s * s)));
  return {std::move(scaled), s};
}

}  // namespace mista
