#pragma once

#include <memory>
#include <string>

#include "adapt/mmd.hpp"

namespace adapt {

enum class SubspaceMethod { Tca, Sstca, Iglda };

const char* to_string(SubspaceMethod method);
SubspaceMethod parse_subspace_method(const std::string& text);

// I - (1/N) * ones * ones'.
Matrix centering_matrix(Eigen::Index n);

// Rank-one MMD weighting gamma * gamma'.
Matrix mmd_matrix(const GammaVector& gamma);

// Unnormalized graph Laplacian D - W over a symmetrized k-NN graph with
// Gaussian edge weights exp(-dist^2 / (2 * bandwidth^2)). An edge exists
// when either endpoint lists the other among its k nearest neighbours.
Matrix graph_laplacian(const Eigen::Ref<const Matrix>& x, int k_neighbors, double bandwidth);

double median_pairwise_distance(const Eigen::Ref<const Matrix>& x);

// gamma_mix * K_l + (1 - gamma_mix) * I where K_l(i,j) = 1 exactly when both
// samples are labeled with the same class.
Matrix label_kernel(const LabelVector& labels, double gamma_mix);

// Per-class scatter weighting over the first n_source (labeled) columns:
// (1/n_source) * (delta_ij - 1/n_c) for same-class source pairs, zero
// elsewhere. The induced quadratic form is the mean within-class variance of
// projected source samples.
Matrix intra_class_matrix(const LabelVector& labels, Eigen::Index n_source);

struct SubspaceModel {
  SubspaceMethod method = SubspaceMethod::Tca;
  Eigen::Index m = 0;
  // N x m projection coefficients; columns scaled so W' B W = I_m for the
  // method's constraint matrix B.
  Matrix w;
  double constraint_residual = 0.0;
  // Selected generalized eigenvalues, non-increasing.
  Vector eigenvalues;
  // Gram the model was fitted on, kept for projecting training columns.
  std::shared_ptr<const Matrix> train_gram;

  std::string to_json() const;
};

SubspaceModel tca_fit(const JointGram& gram, const GammaVector& gamma, double mu,
                      Eigen::Index m);

SubspaceModel sstca_fit(const JointGram& gram, const GammaVector& gamma,
                        const Eigen::Ref<const Matrix>& laplacian,
                        const Eigen::Ref<const Matrix>& label_gram, double mu, double lambda,
                        Eigen::Index m);

SubspaceModel iglda_fit(const JointGram& gram, const GammaVector& gamma,
                        const Eigen::Ref<const Matrix>& intra_class, double mu, double lambda,
                        Eigen::Index m);

// Embeds Gram columns: Y = W' * K_cols (m rows, one column per input column).
Matrix project(const SubspaceModel& model, const Eigen::Ref<const Matrix>& gram_columns);

}  // namespace adapt
