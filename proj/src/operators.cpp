#include "mista/operators.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <utility>

namespace mista {

Vec LinearOp::forward(const Vec& x) const {
  if (static_cast<std::size_t>(x.size()) != domain_dim())
    throw std::invalid_argument("operator: forward dimension mismatch");
  Vec y(codomain_dim());
  impl_->apply(x, y);
  return y;
}

Vec LinearOp::adjoint(const Vec& y) const {
  if (static_cast<std::size_t>(y.size()) != codomain_dim())
    throw std::invalid_argument("operator: adjoint dimension mismatch");
  Vec x(domain_dim());
  impl_->apply_adjoint(y, x);
  return x;
}

namespace {

// Largest singular value estimate via power iteration on K*K, run from a
// fixed pseudo-random start. Converges from below; the caller inflates.
double power_norm_estimate(const Eigen::MatrixXd& m, int sweeps) {
  if (m.size() == 0) return 0.0;
  std::mt19937_64 rng(0x6d697374AULL);
  Vec v(m.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v[i] = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
  if (v.norm() == 0.0) v.setOnes();
  v.normalize();
  for (int it = 0; it < sweeps; ++it) {
    Vec w = m.transpose() * (m * v);
    const double n = w.norm();
    if (n == 0.0) return 0.0;  // start vector in the nullspace; K may be 0
    v = w / n;
  }
  return (m * v).norm();
}

struct MatrixImpl final : LinearOp::Impl {
  Eigen::MatrixXd m;
  double nb;

  explicit MatrixImpl(Eigen::MatrixXd mat) : m(std::move(mat)) {
    if (m.size() == 0) throw std::invalid_argument("matrix operator: empty");
    if (!m.allFinite())
      throw std::invalid_argument("matrix operator: entries must be finite");
    const double est = power_norm_estimate(m, 50);
    // Power iteration underestimates; if it degenerated entirely, fall
    // back to the Frobenius norm (always an upper bound).
    nb = est > 0.0 ? est * 1.01 : m.norm();
  }
  std::size_t domain_dim() const override { return m.cols(); }
  std::size_t codomain_dim() const override { return m.rows(); }
  double norm_bound() const override { return nb; }
  void apply(const Vec& x, Vec& y) const override { y.noalias() = m * x; }
  void apply_adjoint(const Vec& y, Vec& x) const override {
    x.noalias() = m.transpose() * y;
  }
};

struct DiagonalImpl final : LinearOp::Impl {
  Vec d;
  double nb;

  explicit DiagonalImpl(Vec diag) : d(std::move(diag)) {
    if (d.size() == 0) throw std::invalid_argument("diagonal operator: empty");
    if (!d.allFinite())
      throw std::invalid_argument("diagonal operator: entries must be finite");
    nb = d.cwiseAbs().maxCoeff();
  }
  std::size_t domain_dim() const override { return d.size(); }
  std::size_t codomain_dim() const override { return d.size(); }
  double norm_bound() const override { return nb; }
  void apply(const Vec& x, Vec& y) const override {
    y.array() = d.array() * x.array();
  }
  void apply_adjoint(const Vec& y, Vec& x) const override {
    x.array() = d.array() * y.array();
  }
  std::optional<Vec> diagonal() const override { return d; }
};

struct Conv1dImpl final : LinearOp::Impl {
  std::vector<double> h;
  std::size_t n;
  double nb;

  Conv1dImpl(std::vector<double> kernel, std::size_t len)
      : h(std::move(kernel)), n(len) {
    if (h.empty() || h.size() > n)
      throw std::invalid_argument("conv1d: kernel must fit the signal");
    for (double c : h)
      if (!std::isfinite(c))
        throw std::invalid_argument("conv1d: kernel must be finite");
    // The operator is diagonalized by the DFT; its singular values are
    // the moduli of the transfer symbol at the n roots of unity.
    nb = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      std::complex<double> sym = 0.0;
      for (std::size_t k = 0; k < h.size(); ++k) {
        const double ang = -2.0 * M_PI * static_cast<double>(j * k) /
                           static_cast<double>(n);
        sym += h[k] * std::complex<double>(std::cos(ang), std::sin(ang));
      }
      nb = std::max(nb, std::abs(sym));
    }
  }
  std::size_t domain_dim() const override { return n; }
  std::size_t codomain_dim() const override { return n; }
  double norm_bound() const override { return nb; }
  void apply(const Vec& x, Vec& y) const override {
    y.setZero();
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < h.size(); ++k)
        y[j] += h[k] * x[(j + n - k) % n];
  }
  void apply_adjoint(const Vec& y, Vec& x) const override {
    x.setZero();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < h.size(); ++k)
        x[i] += h[k] * y[(i + k) % n];
  }
};

struct HaarImpl final : LinearOp::Impl {
  std::size_t n;

  explicit HaarImpl(std::size_t len) : n(len) {
    if (n == 0 || (n & (n - 1)) != 0)
      throw std::invalid_argument("haar: length must be a power of two");
  }
  std::size_t domain_dim() const override { return n; }
  std::size_t codomain_dim() const override { return n; }
  double norm_bound() const override { return 1.0; }

  // Analysis: averaging/differencing pyramid with 1/sqrt(2) scaling.
  void apply(const Vec& x, Vec& y) const override {
    static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Vec buf = x;
    std::size_t len = n;
    while (len > 1) {
      const std::size_t half = len / 2;
      Vec s(half);
      for (std::size_t i = 0; i < half; ++i) {
        s[i] = (buf[2 * i] + buf[2 * i + 1]) * inv_sqrt2;
        y[half + i] = (buf[2 * i] - buf[2 * i + 1]) * inv_sqrt2;
      }
      buf.head(half) = s;
      len = half;
    }
    y[0] = buf[0];
  }
  void apply_adjoint(const Vec& y, Vec& x) const override {
    static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    x[0] = y[0];
    std::size_t len = 1;
    while (len < n) {
      Vec nxt(2 * len);
      for (std::size_t i = 0; i < len; ++i) {
        nxt[2 * i] = (x[i] + y[len + i]) * inv_sqrt2;
        nxt[2 * i + 1] = (x[i] - y[len + i]) * inv_sqrt2;
      }
      x.head(2 * len) = nxt;
      len *= 2;
    }
  }
};

struct AdjointImpl final : LinearOp::Impl {
  LinearOp inner;

  explicit AdjointImpl(LinearOp k) : inner(std::move(k)) {}
  std::size_t domain_dim() const override { return inner.codomain_dim(); }
  std::size_t codomain_dim() const override { return inner.domain_dim(); }
  double norm_bound() const override { return inner.norm_bound(); }
  void apply(const Vec& x, Vec& y) const override { y = inner.adjoint(x); }
  void apply_adjoint(const Vec& y, Vec& x) const override {
    x = inner.forward(y);
  }
};

struct SumSpaceImpl final : LinearOp::Impl {
  LinearOp k;
  std::size_t half;

  explicit SumSpaceImpl(LinearOp inner)
      : k(std::move(inner)), half(k.domain_dim()) {}
  std::size_t domain_dim() const override { return 2 * half; }
  std::size_t codomain_dim() const override { return k.codomain_dim(); }
  double norm_bound() const override {
    return std::sqrt(2.0) * k.norm_bound();
  }
  void apply(const Vec& x, Vec& y) const override {
    y = k.forward(x.head(half) + x.tail(half));
  }
  void apply_adjoint(const Vec& y, Vec& x) const override {
    const Vec back = k.adjoint(y);
    x.head(half) = back;
    x.tail(half) = back;
  }
};

struct MultiframeImpl final : LinearOp::Impl {
  LinearOp a;
  std::vector<LinearOp> syn;
  std::vector<std::size_t> offsets;  // block starts, last entry = total
  double nb;

  MultiframeImpl(LinearOp outer, std::vector<LinearOp> synthesis)
      : a(std::move(outer)), syn(std::move(synthesis)) {
    if (syn.empty())
      throw std::invalid_argument("multiframe: needs at least one frame");
    offsets.push_back(0);
    double bsum = 0.0;
    for (const auto& s : syn) {
      if (s.codomain_dim() != a.domain_dim())
        throw std::invalid_argument(
            "multiframe: synthesis codomain must match the outer domain");
      offsets.push_back(offsets.back() + s.domain_dim());
      bsum += s.norm_bound() * s.norm_bound();
    }
    nb = a.norm_bound() * std::sqrt(bsum);
  }
  std::size_t domain_dim() const override { return offsets.back(); }
  std::size_t codomain_dim() const override { return a.codomain_dim(); }
  double norm_bound() const override { return nb; }
  void apply(const Vec& x, Vec& y) const override {
    Vec acc = Vec::Zero(a.domain_dim());
    for (std::size_t i = 0; i < syn.size(); ++i)
      acc += syn[i].forward(x.segment(offsets[i], offsets[i + 1] - offsets[i]));
    y = a.forward(acc);
  }
  void apply_adjoint(const Vec& y, Vec& x) const override {
    const Vec back = a.adjoint(y);
    for (std::size_t i = 0; i < syn.size(); ++i)
      x.segment(offsets[i], offsets[i + 1] - offsets[i]) =
          syn[i].adjoint(back);
  }
};

struct ScaledImpl final : LinearOp::Impl {
  LinearOp k;
  double factor;

  ScaledImpl(LinearOp inner, double f) : k(std::move(inner)), factor(f) {
    if (!std::isfinite(factor))
      throw std::invalid_argument("scaled operator: factor must be finite");
  }
  std::size_t domain_dim() const override { return k.domain_dim(); }
  std::size_t codomain_dim() const override { return k.codomain_dim(); }
  double norm_bound() const override {
    return std::abs(factor) * k.norm_bound();
  }
  void apply(const Vec& x, Vec& y) const override {
    y = factor * k.forward(x);
  }
  void apply_adjoint(const Vec& y, Vec& x) const override {
    x = factor * k.adjoint(y);
  }
  std::optional<Vec> diagonal() const override {
    if (auto d = k.diagonal()) return Vec(factor * d->array());
    return std::nullopt;
  }
};

}  // namespace

LinearOp matrix_op(const Eigen::MatrixXd& entries) {
  return LinearOp(std::make_shared<MatrixImpl>(entries));
}

LinearOp diagonal_op(Vec diag) {
  return LinearOp(std::make_shared<DiagonalImpl>(std::move(diag)));
}

LinearOp conv1d_op(const std::vector<double>& kernel, std::size_t n) {
  return LinearOp(std::make_shared<Conv1dImpl>(kernel, n));
}

LinearOp haar_analysis(std::size_t n) {
  return LinearOp(std::make_shared<HaarImpl>(n));
}

LinearOp adjoint_op(LinearOp k) {
  return LinearOp(std::make_shared<AdjointImpl>(std::move(k)));
}

LinearOp sum_space_op(LinearOp k) {
  return LinearOp(std::make_shared<SumSpaceImpl>(std::move(k)));
}

LinearOp multiframe_op(LinearOp a, std::vector<LinearOp> synthesis) {
  return LinearOp(
      std::make_shared<MultiframeImpl>(std::move(a), std::move(synthesis)));
}

LinearOp scaled_op(LinearOp k, double factor) {
  return LinearOp(std::make_shared<ScaledImpl>(std::move(k), factor));
}

Eigen::MatrixXd materialize(const LinearOp& k) {
  Eigen::MatrixXd m(k.codomain_dim(), k.domain_dim());
  Vec e = Vec::Zero(k.domain_dim());
  for (std::size_t j = 0; j < k.domain_dim(); ++j) {
    e[j] = 1.0;
    m.col(j) = k.forward(e);
    e[j] = 0.0;
  }
  return m;
}

}  // namespace mista
