#pragma once

#include "adapt/kernels.hpp"
#include "adapt/types.hpp"

namespace adapt {

// Signed domain-indicator weights: +1/Ns for source columns, -1/Nt for
// target columns. gamma' * K * gamma is the (squared, biased) MMD estimate.
struct GammaVector {
  Vector weights;
  Eigen::Index n_source = 0;
  Eigen::Index n_target = 0;

  Eigen::Index size() const { return n_source + n_target; }
};

GammaVector gamma_vector(Eigen::Index n_source, Eigen::Index n_target);

// Gram matrix over the stacked source-then-target sample columns, with the
// source/target block boundary recorded.
struct JointGram {
  Matrix k;
  Eigen::Index n_source = 0;

  Eigen::Index size() const { return k.rows(); }
  Eigen::Index n_target() const { return k.rows() - n_source; }

  Eigen::Block<const Matrix> source_block() const {
    return k.block(0, 0, n_source, n_source);
  }
  Eigen::Block<const Matrix> target_block() const {
    return k.block(n_source, n_source, n_target(), n_target());
  }
  Eigen::Block<const Matrix> cross_block() const {
    return k.block(0, n_source, n_source, n_target());
  }

  bool is_valid(double rel_tol = 1e-8) const { return psd_check(k, rel_tol); }
};

JointGram joint_gram(const KernelSpec& spec, const DomainPair& pair);
JointGram joint_gram(const Pdqk& kernel, const DomainPair& pair);

double mmd_value(const JointGram& gram, const GammaVector& gamma);

// MMD split into the base-kernel share and the learnable share
//   base_part      = gamma' * K_base * gamma
//   learnable_part = eta * (Phi gamma)' * M * (Phi gamma)
struct MmdParts {
  double base_part = 0.0;
  double learnable_part = 0.0;

  double total() const { return base_part + learnable_part; }
};

MmdParts mmd_decomposed(const Pdqk& kernel, const DomainPair& pair);

}  // namespace adapt
