#include "mista/penalty.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mista {

PenaltySpec PenaltySpec::uniform(std::size_t n, PenaltyTerm term) {
  PenaltySpec s;
  s.index_terms_.assign(n, {term});
  s.index_groups_.assign(n, {0});
  s.multipliers_ = {1.0};
  s.finalize();
  return s;
}

PenaltySpec PenaltySpec::partitioned(std::vector<int> group_of,
                                     std::vector<PenaltyTerm> group_terms) {
  PenaltySpec s;
  s.index_terms_.reserve(group_of.size());
  s.index_groups_.reserve(group_of.size());
  for (int g : group_of) {
    if (g < 0 || g >= static_cast<int>(group_terms.size()))
      throw std::invalid_argument("penalty: group label out of range");
    s.index_terms_.push_back({group_terms[g]});
    s.index_groups_.push_back({g});
  }
  s.multipliers_.assign(group_terms.size(), 1.0);
  s.finalize();
  return s;
}

PenaltySpec PenaltySpec::partitioned_weights(
    std::vector<int> group_of, std::vector<double> weights,
    std::vector<double> group_exponents) {
  if (weights.size() != group_of.size())
    throw std::invalid_argument("penalty: one weight per index required");
  PenaltySpec s;
  for (std::size_t i = 0; i < group_of.size(); ++i) {
    const int g = group_of[i];
    if (g < 0 || g >= static_cast<int>(group_exponents.size()))
      throw std::invalid_argument("penalty: group label out of range");
    s.index_terms_.push_back({{weights[i], group_exponents[g]}});
    s.index_groups_.push_back({g});
  }
  s.multipliers_.assign(group_exponents.size(), 1.0);
  s.finalize();
  return s;
}

PenaltySpec PenaltySpec::stacked(std::size_t n,
                                 std::vector<PenaltyTerm> terms) {
  PenaltySpec s;
  std::vector<int> slots(terms.size());
  for (std::size_t j = 0; j < terms.size(); ++j) slots[j] = static_cast<int>(j);
  s.index_terms_.assign(n, terms);
  s.index_groups_.assign(n, slots);
  s.multipliers_.assign(terms.size(), 1.0);
  s.finalize();
  return s;
}

void PenaltySpec::finalize() {
  if (index_terms_.empty())
    throw std::invalid_argument("penalty: empty index set");
  for (double a : multipliers_)
    if (!(a > 0.0) || !std::isfinite(a))
      throw std::invalid_argument("penalty: multipliers must be positive");

  folded_.resize(index_terms_.size());
  min_weight_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < index_terms_.size(); ++i) {
    auto& base = index_terms_[i];
    validate(std::span<const PenaltyTerm>{base});
    if (base.size() != index_groups_[i].size())
      throw std::invalid_argument("penalty: malformed group labels");
    folded_[i] = base;
    for (std::size_t j = 0; j < base.size(); ++j) {
      folded_[i][j].weight *= multipliers_[index_groups_[i][j]];
      min_weight_ = std::min(min_weight_, folded_[i][j].weight);
    }
  }
}

bool PenaltySpec::is_partitioned() const {
  for (const auto& ts : index_terms_)
    if (ts.size() != 1) return false;
  return true;
}

bool PenaltySpec::strictly_convex() const {
  for (const auto& ts : index_terms_) {
    bool any = false;
    for (const auto& t : ts) any = any || t.exponent > 1.0;
    if (!any) return false;
  }
  return true;
}

PenaltySpec PenaltySpec::with_multipliers(std::vector<double> alpha) const {
  if (alpha.size() != multipliers_.size())
    throw std::invalid_argument("penalty: one multiplier per group required");
  PenaltySpec s;
  s.index_terms_ = index_terms_;
  s.index_groups_ = index_groups_;
  s.multipliers_ = std::move(alpha);
  s.finalize();
  return s;
}

PenaltySpec PenaltySpec::scaled_weights(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor))
    throw std::invalid_argument("penalty: scale factor must be positive");
  PenaltySpec s;
  s.index_terms_ = index_terms_;
  for (auto& ts : s.index_terms_)
    for (auto& t : ts) t.weight *= factor;
  s.index_groups_ = index_groups_;
  s.multipliers_ = multipliers_;
  s.finalize();
  return s;
}

PenaltySpec append(const PenaltySpec& a, const PenaltySpec& b) {
  PenaltySpec s;
  const int offset = static_cast<int>(a.group_count());
  s.multipliers_ = a.multipliers_;
  s.multipliers_.insert(s.multipliers_.end(), b.multipliers_.begin(),
                        b.multipliers_.end());
  s.index_terms_ = a.index_terms_;
  s.index_terms_.insert(s.index_terms_.end(), b.index_terms_.begin(),
                        b.index_terms_.end());
  s.index_groups_ = a.index_groups_;
  for (const auto& gs : b.index_groups_) {
    auto shifted = gs;
    for (int& g : shifted) g += offset;
    s.index_groups_.push_back(std::move(shifted));
  }
  s.finalize();
  return s;
}

double penalty_value(std::span<const double> f, const PenaltySpec& spec) {
  if (f.size() != spec.size())
    throw std::invalid_argument("penalty: coefficient length mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = std::abs(f[i]);
    for (const auto& t : spec.terms_at(i))
      total += t.weight * std::pow(a, t.exponent);
  }
  return total;
}

}  // namespace mista
