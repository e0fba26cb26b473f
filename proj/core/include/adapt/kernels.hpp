#pragma once

#include <string>

#include "adapt/types.hpp"

namespace adapt {

enum class KernelKind { Polynomial, Rbf, Cauchy, Exponential };

// Closed-form base kernel:
//   poly    k(x,y) = (a*<x,y> + b)^d
//   rbf     k(x,y) = exp(-|x-y|^2 / sigma)
//   cauchy  k(x,y) = 1 / (1 + |x-y|^2 / sigma)
//   exp     k(x,y) = exp(-|x-y| / sigma)
// Canonical text forms: "poly:a=0.01,b=0,d=1", "rbf:sigma=3",
// "cauchy:sigma=1000", "exp:sigma=1".
struct KernelSpec {
  KernelKind kind = KernelKind::Rbf;
  double a = 1.0;
  double b = 0.0;
  int degree = 1;
  double sigma = 1.0;

  static KernelSpec polynomial(double a, double b, int degree);
  static KernelSpec rbf(double sigma);
  static KernelSpec cauchy(double sigma);
  static KernelSpec exponential(double sigma);

  static KernelSpec parse(const std::string& text);
  std::string to_text() const;

  void validate() const;
};

double eval_kernel(const KernelSpec& spec, const Eigen::Ref<const Vector>& x,
                   const Eigen::Ref<const Vector>& y);

// Symmetric Gram matrix over the columns of X. The lower triangle mirrors
// the upper one, so the result equals its transpose exactly.
Matrix gram(const KernelSpec& spec, const Eigen::Ref<const Matrix>& x);

// Rectangular Gram block K(i,j) = k(x_i, y_j).
Matrix gram(const KernelSpec& spec, const Eigen::Ref<const Matrix>& x,
            const Eigen::Ref<const Matrix>& y);

// Anchor feature block Phi with Phi(h,j) = beta(z_j, anchor_h); H rows, one
// column per column of z.
Matrix beta_features(const KernelSpec& beta, const AnchorSet& anchors,
                     const Eigen::Ref<const Matrix>& z);

// Learnable kernel k(x,y) = base(x,y) + eta * bmap(x)' * M * bmap(y) where
// bmap(x) stacks beta(x, anchor_h) over the anchor set. M must be symmetric
// positive semi-definite (within 1e-8 * trace) for the kernel to stay valid.
struct Pdqk {
  KernelSpec base;
  KernelSpec beta;
  AnchorSet anchors;
  Matrix m;
  double eta = 1.0;

  void validate() const;

  // bmap(x): the H anchor responses of x.
  Vector beta_map(const Eigen::Ref<const Vector>& x) const;
};

double pdqk_eval(const Pdqk& kernel, const Eigen::Ref<const Vector>& x,
                 const Eigen::Ref<const Vector>& y);

// Symmetric learnable-kernel Gram over the columns of X.
Matrix pdqk_gram(const Pdqk& kernel, const Eigen::Ref<const Matrix>& x);

Matrix pdqk_gram(const Pdqk& kernel, const Eigen::Ref<const Matrix>& x,
                 const Eigen::Ref<const Matrix>& y);

// True when K is symmetric within rel_tol * |K|_F and its smallest
// eigenvalue is >= -rel_tol * trace(K). Non-square input fails.
bool psd_check(const Eigen::Ref<const Matrix>& k, double rel_tol);

// K + eps * I; eps < 0 selects the default 1e-10 * trace(K) / n.
Matrix with_jitter(Matrix k, double eps = -1.0);

}  // namespace adapt
