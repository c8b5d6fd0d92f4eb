#pragma once
/*
 * Regularization schedules and the vanishing-noise experiment.
 *
 * A schedule pairs noise levels eps_t (strictly decreasing) with penalty
 * multipliers alpha_i(eps_t) satisfying, in discrete form,
 *
 *     alpha_i(eps_t) -> 0,   eps_t^2 / alpha_i(eps_t) -> 0,
 *     max_ij |alpha_i/alpha_j - 1| nonincreasing.
 *
 * run_regularization_path() perturbs K f0 with deterministic noise of
 * norm 0.9 eps_t, solves the problem with multipliers alpha(eps_t), and
 * records the distance to the minimal-penalty element of
 * { f : K f = K f0 }. The error column trends to the penalty bias and
 * vanishes with eps.
 */

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "mista/solver.hpp"

namespace mista {

struct Schedule {
  std::vector<double> eps;                  // strictly decreasing, > 0
  std::vector<std::vector<double>> alphas;  // alphas[t][group]
};

// eps_t = eps0 * ratio^t, alpha_i(eps_t) = eps_t^exponent for all i.
// exponent must lie in (0, 2): at 2 the ratio eps^2/alpha no longer
// vanishes, at 0 the multipliers no longer vanish.
Schedule geometric_schedule(double eps0, double ratio, std::size_t count,
                            double exponent, std::size_t groups = 1);

// Throws std::invalid_argument naming the violated condition.
void validate_schedule(const Schedule& s);

// Smallest/largest singular value of the materialized operator; the
// basis for desk-scale injectivity certificates.
struct SingularRange {
  double smallest;
  double largest;
};
SingularRange singular_range(const LinearOp& k);
bool injective_certified(const LinearOp& k);

// Minimal element of { f : K f = K f0 } with respect to the penalty.
// Injective operators give f0 itself; otherwise the nullspace is taken
// from the SVD (or the supplied basis) and searched by refined grid,
// which is only supported up to 3 nullspace dimensions.
Vec minimal_penalty_element(
    const LinearOp& k, const PenaltySpec& penalty, const Vec& f0,
    const std::optional<std::vector<Vec>>& nullspace_basis = std::nullopt);

struct RegLevel {
  double eps;
  double alpha;        // group-0 multiplier (all groups share the family)
  double noise_norm;   // ||g_t - K f0||, equals 0.9 eps_t
  double error;        // ||f*_t - f_dagger||
  std::size_t iters;
};

struct RegReport {
  std::vector<RegLevel> levels;
  Vec minimal_element;  // f_dagger
};

// Requires the uniqueness condition: an exponent > 1 at every index, or
// a certified injective operator. Noise at level t is drawn from a seed
// derived as mix_seed(noise_seed, t), so levels are independent and the
// whole report is reproducible bit for bit.
RegReport run_regularization_path(const Vec& f0, const LinearOp& k,
                                  const PenaltySpec& base_penalty,
                                  const Schedule& schedule,
                                  std::uint64_t noise_seed,
                                  const StopRule& stop);

// CSV columns: level,eps,alpha,noise_norm,error,iters.
void write_regpath_csv(const RegReport& report,
                       const std::filesystem::path& path);

}  // namespace mista
