#include "mista/regpath.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mista/io.hpp"

namespace mista {

Schedule geometric_schedule(double eps0, double ratio, std::size_t count,
                            double exponent, std::size_t groups) {
  if (!(eps0 > 0.0)) throw std::invalid_argument("schedule: eps0 must be > 0");
  if (!(ratio > 0.0 && ratio < 1.0))
    throw std::invalid_argument("schedule: ratio must lie in (0, 1)");
  if (count < 1) throw std::invalid_argument("schedule: count must be >= 1");
  if (groups < 1) throw std::invalid_argument("schedule: needs >= 1 group");
  if (!(exponent > 0.0 && exponent < 2.0))
    throw std::invalid_argument(
        "schedule: alpha exponent must lie in (0, 2); at 2 the condition "
        "eps^2/alpha(eps) -> 0 fails, at 0 alpha(eps) -> 0 fails");
  Schedule s;
  for (std::size_t t = 0; t < count; ++t) {
    const double eps = eps0 * std::pow(ratio, static_cast<double>(t));
    s.eps.push_back(eps);
    s.alphas.emplace_back(groups, std::pow(eps, exponent));
  }
  validate_schedule(s);
  return s;
}

void validate_schedule(const Schedule& s) {
  const std::size_t n = s.eps.size();
  if (n == 0) throw std::invalid_argument("schedule: empty");
  if (s.alphas.size() != n)
    throw std::invalid_argument("schedule: one alpha vector per level");
  const std::size_t groups = s.alphas[0].size();
  double prev_dev = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < n; ++t) {
    if (!(s.eps[t] > 0.0))
      throw std::invalid_argument("schedule: eps must be positive");
    if (t > 0 && !(s.eps[t] < s.eps[t - 1]))
      throw std::invalid_argument("schedule: eps must be strictly decreasing");
    if (s.alphas[t].size() != groups || groups == 0)
      throw std::invalid_argument("schedule: ragged alpha vectors");
    double amin = std::numeric_limits<double>::infinity(), amax = 0.0;
    for (std::size_t i = 0; i < groups; ++i) {
      const double a = s.alphas[t][i];
      if (!(a > 0.0))
        throw std::invalid_argument("schedule: alphas must be positive");
      if (t > 0 && !(a < s.alphas[t - 1][i]))
        throw std::invalid_argument(
            "schedule: alpha_i(eps_t) must decrease toward 0");
      if (t > 0 && !(s.eps[t] * s.eps[t] / a <
                     s.eps[t - 1] * s.eps[t - 1] / s.alphas[t - 1][i]))
        throw std::invalid_argument(
            "schedule: eps^2/alpha(eps) must decrease toward 0");
      amin = std::min(amin, a);
      amax = std::max(amax, a);
    }
    const double dev = amax / amin - 1.0;
    if (dev > prev_dev + 1e-15)
      throw std::invalid_argument(
          "schedule: alpha ratio deviation must be nonincreasing");
    prev_dev = dev;
  }
}

SingularRange singular_range(const LinearOp& k) {
  const Eigen::MatrixXd m = materialize(k);
  const auto svals = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  return {svals.minCoeff(), svals.maxCoeff()};
}

bool injective_certified(const LinearOp& k) {
  if (k.codomain_dim() < k.domain_dim()) return false;  // wide maps never
  const auto sr = singular_range(k);
  return sr.smallest > std::max(1e-10, 1e-8 * sr.largest);
}

namespace {

// Tensor grid search over the nullspace coordinates, the same 10x zoom
// pattern as the scalar oracle (dimension <= 3).
Vec nullspace_grid_min(const PenaltySpec& penalty, const Vec& f0,
                       const Eigen::MatrixXd& basis) {
  const int dim = static_cast<int>(basis.cols());
  // penalty(f_dagger) <= penalty(f0) confines each coordinate, and the
  // basis columns are orthonormal, so |t_j| <= ||f_dagger|| + ||f0||.
  const double p0 = penalty_value(f0, penalty);
  const double q = p0 / penalty.min_weight();
  const double coord = std::max({1.0, q, std::sqrt(q)});
  const double radius =
      coord * std::sqrt(static_cast<double>(penalty.size())) + f0.norm() + 1.0;

  const int points = dim == 1 ? 801 : (dim == 2 ? 121 : 41);
  const int rounds = 7;
  Vec lo = Vec::Constant(dim, -radius), hi = Vec::Constant(dim, radius);
  Vec best_t = Vec::Zero(dim);
  Vec f = f0;
  auto value = [&](const Vec& t) {
    f = f0 + basis * t;
    return penalty_value(f, penalty);
  };
  double best = value(best_t);

  Vec t(dim);
  std::vector<int> idx(dim, 0);
  for (int r = 0; r <= rounds; ++r) {
    if (r > 0)
      for (int j = 0; j < dim; ++j) {
        const double w = (hi[j] - lo[j]) / 10.0;
        lo[j] = best_t[j] - 0.5 * w;
        hi[j] = best_t[j] + 0.5 * w;
      }
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      for (int j = 0; j < dim; ++j)
        t[j] = lo[j] + (hi[j] - lo[j]) * idx[j] / (points - 1);
      const double v = value(t);
      if (v < best) {
        best = v;
        best_t = t;
      }
      int j = 0;
      while (j < dim && ++idx[j] == points) idx[j++] = 0;
      if (j == dim) break;
    }
  }
  return f0 + basis * best_t;
}

}  // namespace

Vec minimal_penalty_element(
    const LinearOp& k, const PenaltySpec& penalty, const Vec& f0,
    const std::optional<std::vector<Vec>>& nullspace_basis) {
  if (static_cast<std::size_t>(f0.size()) != k.domain_dim() ||
      penalty.size() != k.domain_dim())
    throw std::invalid_argument("minimal element: dimension mismatch");

  Eigen::MatrixXd basis;
  if (nullspace_basis) {
    if (nullspace_basis->empty())
      throw std::invalid_argument("minimal element: empty nullspace basis");
    basis.resize(f0.size(), nullspace_basis->size());
    for (std::size_t j = 0; j < nullspace_basis->size(); ++j)
      basis.col(j) = (*nullspace_basis)[j];
    // Orthonormalize so the search coordinates are well scaled.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
    basis = qr.householderQ() *
            Eigen::MatrixXd::Identity(basis.rows(), basis.cols());
  } else {
    const Eigen::MatrixXd m = materialize(k);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double tol = std::max(1e-10, 1e-8 * sv.maxCoeff());
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv[i] > tol) ++rank;
    const int null_dim = static_cast<int>(k.domain_dim()) - rank;
    if (null_dim == 0) return f0;  // injective: the feasible set is {f0}
    basis = svd.matrixV().rightCols(null_dim);
  }
  if (basis.cols() > 3)
    throw std::invalid_argument(
        "minimal element: nullspace dimension > 3 is unsupported");
  return nullspace_grid_min(penalty, f0, basis);
}

RegReport run_regularization_path(const Vec& f0, const LinearOp& k,
                                  const PenaltySpec& base_penalty,
                                  const Schedule& schedule,
                                  std::uint64_t noise_seed,
                                  const StopRule& stop) {
  validate_schedule(schedule);
  if (schedule.alphas[0].size() != base_penalty.group_count())
    throw std::invalid_argument(
        "regpath: schedule groups must match penalty groups");
  if (!base_penalty.strictly_convex() && !injective_certified(k))
    throw std::invalid_argument(
        "regpath: needs an exponent > 1 at every index or an injective "
        "operator");

  RegReport report;
  report.minimal_element = minimal_penalty_element(k, base_penalty, f0);
  const Vec clean = k.forward(f0);

  for (std::size_t t = 0; t < schedule.eps.size(); ++t) {
    Vec noise = gaussian_vector(clean.size(), mix_seed(noise_seed, t));
    noise *= 0.9 * schedule.eps[t] / noise.norm();
    const Vec g = clean + noise;

    Problem prob(k, g, base_penalty.with_multipliers(schedule.alphas[t]));
    auto scaled = renormalize(prob);
    auto res = solve(Vec::Zero(f0.size()), scaled.problem, stop);

    report.levels.push_back({schedule.eps[t], schedule.alphas[t][0],
                             noise.norm(),
                             (res.minimizer - report.minimal_element).norm(),
                             res.trace.iterations});
  }
  return report;
}

void write_regpath_csv(const RegReport& report,
                       const std::filesystem::path& path) {
  std::ostringstream out;
  out << "level,eps,alpha,noise_norm,error,iters\n";
  for (std::size_t t = 0; t < report.levels.size(); ++t) {
    const auto& l = report.levels[t];
    out << t << ',' << format_double(l.eps) << ',' << format_double(l.alpha)
        << ',' << format_double(l.noise_norm) << ','
        << format_double(l.error) << ',' << l.iters << '\n';
  }
  write_file_atomic(path, out.str());
}

}  // namespace mista
