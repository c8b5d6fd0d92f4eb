#pragma once
/*
 * Linear operator abstraction with adjoints and certified norm bounds.
 *
 * Every operator carries a norm_bound() that is a valid upper bound on
 * its spectral norm: exact for orthonormal transforms, circular
 * convolutions (max modulus of the transfer symbol) and diagonal maps;
 * power iteration with 1% inflation for dense matrices; composition
 * formulas for the sum-space and multi-frame operators.
 *
 * Operators are immutable after construction; forward/adjoint are
 * reentrant and safe to call concurrently.
 */

#include <Eigen/Dense>
#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

namespace mista {

using Vec = Eigen::VectorXd;

class LinearOp {
 public:
  struct Impl {
    virtual ~Impl() = default;
    virtual std::size_t domain_dim() const = 0;
    virtual std::size_t codomain_dim() const = 0;
    virtual double norm_bound() const = 0;
    virtual void apply(const Vec& x, Vec& y) const = 0;          // y = K x
    virtual void apply_adjoint(const Vec& y, Vec& x) const = 0;  // x = K* y
    // Diagonal entries when the operator is a known diagonal map.
    virtual std::optional<Vec> diagonal() const { return std::nullopt; }
  };

  LinearOp() = default;
  explicit LinearOp(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::size_t domain_dim() const { return impl_->domain_dim(); }
  std::size_t codomain_dim() const { return impl_->codomain_dim(); }
  double norm_bound() const { return impl_->norm_bound(); }
  std::optional<Vec> diagonal() const { return impl_->diagonal(); }

  Vec forward(const Vec& x) const;
  Vec adjoint(const Vec& y) const;

  explicit operator bool() const { return impl_ != nullptr; }

 private:
  std::shared_ptr<const Impl> impl_;
};

// Dense matrix; adjoint is the transpose. Norm certificate from 50
// power-iteration sweeps on K*K, inflated by 1.01.
LinearOp matrix_op(const Eigen::MatrixXd& entries);

// Diagonal map, exact norm bound max |d_i|.
LinearOp diagonal_op(Vec diag);

// Circular convolution on length-n vectors, kernel index 0 aligned with
// output index 0: (K f)[j] = sum_k kernel[k] f[(j - k) mod n]. Adjoint is
// circular correlation. Norm bound = max modulus of the transfer symbol
// evaluated on the n roots of unity (exact).
LinearOp conv1d_op(const std::vector<double>& kernel, std::size_t n);

// Orthonormal discrete Haar analysis on length n = 2^k; coefficients are
// ordered [coarsest average | coarsest details | ... | finest details].
// Adjoint is the inverse transform; norm bound 1.
LinearOp haar_analysis(std::size_t n);

// Forward and adjoint swapped (e.g. Haar synthesis from analysis).
LinearOp adjoint_op(LinearOp k);

// L(u, v) = K(u + v) on the doubled domain; L*(y) = (K* y, K* y).
// Norm bound sqrt(2) * ||K||.
LinearOp sum_space_op(LinearOp k);

// K(v^1, ..., v^n) = sum_i A(S_i(v^i)) for synthesis maps S_i whose
// codomain is A's domain; the domain is the concatenation of the
// coefficient blocks. Adjoint stacks S_i* A*. Norm bound
// ||A|| * sqrt(sum_i ||S_i||^2).
LinearOp multiframe_op(LinearOp a, std::vector<LinearOp> synthesis);

// factor * K with the certificate scaled accordingly.
LinearOp scaled_op(LinearOp k, double factor);

// Dense representation built by applying K to the canonical basis.
Eigen::MatrixXd materialize(const LinearOp& k);

}  // namespace mista
