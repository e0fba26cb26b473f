#pragma once

#include <functional>
#include <memory>

#include "adapt/types.hpp"

namespace adapt {

// Symmetric member of the tangent space at an SPD point. Construction
// symmetrizes, so xi() equals its transpose exactly.
class TangentMatrix {
 public:
  TangentMatrix() = default;
  explicit TangentMatrix(const Matrix& xi);

  static TangentMatrix zero(Eigen::Index dim);

  const Matrix& xi() const { return xi_; }
  Eigen::Index dim() const { return xi_.rows(); }
  double frobenius_norm() const { return xi_.norm(); }

 private:
  Matrix xi_;
};

// Symmetric positive definite matrix. Construction symmetrizes and rejects
// non-PD input; the eigen-decomposition backing solve/sqrt is computed once
// on first use and shared between copies, so instances are safe to read
// concurrently.
class SpdPoint {
 public:
  explicit SpdPoint(const Matrix& m);

  const Matrix& m() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

  // Applies the inverse through the eigen-decomposition. Eigenvalues at or
  // below 1e-12 * lambda_max are treated as singular.
  Matrix solve(const Eigen::Ref<const Matrix>& rhs) const;
  Matrix sqrt() const;
  Matrix inv_sqrt() const;
  double min_eigenvalue() const;

 private:
  struct Cache;
  SpdPoint() = default;
  const Cache& decomposed() const;
  void check_floor(const Cache& c) const;

  Matrix m_;
  std::shared_ptr<Cache> cache_;

  friend SpdPoint retract(const SpdPoint&, const TangentMatrix&);
  friend SpdPoint retract_exact(const SpdPoint&, const TangentMatrix&);
  friend TangentMatrix directional_rgrad_diff(
      const std::function<TangentMatrix(const SpdPoint&)>&, const SpdPoint&,
      const TangentMatrix&, double);
};

// Riemannian gradient under the affine-invariant metric:
//   rgrad = 0.5 * M * (G + G') * M.
// Output is symmetric by construction.
TangentMatrix egrad_to_rgrad(const SpdPoint& m, const Eigen::Ref<const Matrix>& egrad);

// Affine-invariant inner product trace(M^-1 xi M^-1 zeta).
double metric_inner(const SpdPoint& m, const TangentMatrix& xi, const TangentMatrix& zeta);
double metric_norm(const SpdPoint& m, const TangentMatrix& xi);

// Second-order retraction R_M(xi) = M + xi + 0.5 * xi M^-1 xi. Throws
// StepTooLarge when the result fails the positive-definiteness floor.
SpdPoint retract(const SpdPoint& m, const TangentMatrix& xi);

// Exact exponential map M^1/2 expm(M^-1/2 xi M^-1/2) M^1/2, used to
// cross-check the quadratic retraction.
SpdPoint retract_exact(const SpdPoint& m, const TangentMatrix& xi);

using RgradFn = std::function<TangentMatrix(const SpdPoint&)>;

// Finite-difference action of the gradient field along xi: the gradient is
// re-evaluated after a retraction step of length h in the normalized
// direction and the difference is rescaled by |xi|_F / h. Linear in xi and
// zero at xi = 0.
TangentMatrix directional_rgrad_diff(const RgradFn& rgrad, const SpdPoint& m,
                                     const TangentMatrix& xi, double h);

}  // namespace adapt
