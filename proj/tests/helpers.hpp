#pragma once

// Shared fixtures: seeded random draws and subspace comparison.

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "adapt/spd.hpp"
#include "adapt/types.hpp"

namespace testutil {

inline adapt::Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  adapt::Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  return m;
}

inline adapt::Matrix random_spd(Eigen::Index n, std::mt19937_64& rng, double ridge = 0.5) {
  const adapt::Matrix a = random_matrix(n, n, rng);
  return a * a.transpose() + ridge * adapt::Matrix::Identity(n, n);
}

inline adapt::TangentMatrix random_tangent(Eigen::Index n, std::mt19937_64& rng) {
  return adapt::TangentMatrix(random_matrix(n, n, rng));
}

inline adapt::Vector random_vector(Eigen::Index n, std::mt19937_64& rng) {
  return random_matrix(n, 1, rng);
}

// Two-class dataset with class means +/- separation/2 along the first axis.
inline adapt::LabeledDataset random_labeled(Eigen::Index dim, Eigen::Index n_per_class,
                                            std::mt19937_64& rng, double separation = 3.0) {
  adapt::LabeledDataset set;
  set.data.features = random_matrix(dim, 2 * n_per_class, rng);
  set.labels.resize(2 * n_per_class);
  for (Eigen::Index i = 0; i < 2 * n_per_class; ++i) {
    const int cls = i < n_per_class ? 0 : 1;
    set.labels(i) = cls;
    set.data.features(0, i) += (cls == 0 ? -0.5 : 0.5) * separation;
  }
  return set;
}

inline adapt::DomainPair random_pair(Eigen::Index dim, Eigen::Index n_per_class,
                                     std::mt19937_64& rng, double target_shift = 1.0) {
  adapt::DomainPair pair;
  pair.source = random_labeled(dim, n_per_class, rng);
  pair.target = random_labeled(dim, n_per_class, rng);
  if (dim > 1) pair.target.data.features.row(1).array() += target_shift;
  return pair;
}

// Largest principal angle between the column spaces of a and b, computed
// through sin(theta) so near-identical subspaces are resolved accurately.
inline double max_principal_angle(const adapt::Matrix& a, const adapt::Matrix& b) {
  const auto thin_q = [](const adapt::Matrix& m) {
    Eigen::HouseholderQR<adapt::Matrix> qr(m);
    return adapt::Matrix(qr.householderQ() * adapt::Matrix::Identity(m.rows(), m.cols()));
  };
  const adapt::Matrix qa = thin_q(a);
  const adapt::Matrix qb = thin_q(b);
  const adapt::Matrix residual = qb - qa * (qa.transpose() * qb);
  Eigen::JacobiSVD<adapt::Matrix> svd(residual);
  const double s = std::min(1.0, svd.singularValues().maxCoeff());
  return std::asin(s);
}

}  // namespace testutil
