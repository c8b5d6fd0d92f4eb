#pragma once
/*
 * Per-coefficient penalty specification.
 *
 * A PenaltySpec assigns every coefficient index a nonempty list of
 * penalty terms (c, p). Two construction patterns cover the library:
 *
 *   partitioned  — the index set is split into groups and each index
 *                  carries the single term of its group:
 *                      sum_i sum_{gamma in G_i} w_gamma |f_gamma|^{p_i}
 *   stacked      — every index carries all n terms simultaneously:
 *                      sum_i sum_{gamma}        w_i,gamma |f_gamma|^{p_i}
 *
 * Each term belongs to a group; group multipliers (the regularization
 * parameters) are folded into the weights that the shrinkage maps see,
 * while the base weights are retained so the multipliers can be swapped
 * out along a regularization path.
 */

#include <cstddef>
#include <span>
#include <vector>

#include "mista/shrinkage.hpp"

namespace mista {

class PenaltySpec {
 public:
  PenaltySpec() = default;

  // One identical term at every index (single group).
  static PenaltySpec uniform(std::size_t n, PenaltyTerm term);
  // Index gamma carries group_terms[group_of[gamma]] only.
  static PenaltySpec partitioned(std::vector<int> group_of,
                                 std::vector<PenaltyTerm> group_terms);
  // Like partitioned, but with per-index weights (exponent per group).
  static PenaltySpec partitioned_weights(
      std::vector<int> group_of, std::vector<double> weights,
      std::vector<double> group_exponents);
  // Every index carries all terms; term i forms group i.
  static PenaltySpec stacked(std::size_t n, std::vector<PenaltyTerm> terms);

  std::size_t size() const { return index_terms_.size(); }
  std::size_t group_count() const { return multipliers_.size(); }

  // Terms at one index, multipliers folded into the weights.
  std::span<const PenaltyTerm> terms_at(std::size_t idx) const {
    return folded_[idx];
  }
  // Group id of each term slot at one index.
  std::span<const int> groups_at(std::size_t idx) const {
    return index_groups_[idx];
  }

  const std::vector<double>& multipliers() const { return multipliers_; }
  double min_weight() const { return min_weight_; }  // over folded weights
  bool is_partitioned() const;       // every per-index list has length 1
  bool strictly_convex() const;      // some exponent > 1 at every index

  // Same penalty pattern with new group multipliers.
  PenaltySpec with_multipliers(std::vector<double> alpha) const;
  // All base weights multiplied by a positive factor (renormalization).
  PenaltySpec scaled_weights(double factor) const;

 private:
  friend PenaltySpec append(const PenaltySpec& a, const PenaltySpec& b);

  void finalize();  // validate and fold multipliers

  // index_terms_ holds base weights; folded_ the multiplier-scaled copy.
  std::vector<std::vector<PenaltyTerm>> index_terms_;
  std::vector<std::vector<int>> index_groups_;
  std::vector<double> multipliers_;
  std::vector<std::vector<PenaltyTerm>> folded_;
  double min_weight_ = 0.0;
};

// Concatenation of coefficient blocks; groups of `b` are renumbered to
// follow those of `a`. Used to stack (u, v) problems.
PenaltySpec append(const PenaltySpec& a, const PenaltySpec& b);

// sum_gamma sum_terms c |f_gamma|^p  (folded weights).
double penalty_value(std::span<const double> f, const PenaltySpec& spec);

}  // namespace mista
