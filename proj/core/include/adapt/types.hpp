#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "adapt/errors.hpp"

namespace adapt {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using LabelVector = Eigen::VectorXi;

// Label value marking a sample whose class is unknown or withheld.
inline constexpr int kUnlabeled = -1;

// Dense feature block, one sample per column (d rows, N columns).
// Optional per-column identifiers; when present their count must equal N.
struct DataMatrix {
  Matrix features;
  std::vector<std::string> ids;

  Eigen::Index dim() const { return features.rows(); }
  Eigen::Index count() const { return features.cols(); }

  void validate() const;
};

// Feature block plus integer labels, kUnlabeled (-1) marks unlabeled columns.
struct LabeledDataset {
  DataMatrix data;
  LabelVector labels;

  Eigen::Index dim() const { return data.dim(); }
  Eigen::Index count() const { return data.count(); }
  Eigen::Index labeled_count() const;

  void validate() const;

  // Copy with every label replaced by kUnlabeled.
  LabeledDataset without_labels() const;
};

// Source and target datasets sharing one feature dimensionality.
struct DomainPair {
  LabeledDataset source;
  LabeledDataset target;
};

// Checks shapes, finiteness and the shared feature dimension.
void validate_domain_pair(const DomainPair& pair);

// Columns used as evaluation points of the sample-dependent feature map
// (d rows, H columns).
struct AnchorSet {
  Matrix anchors;

  Eigen::Index dim() const { return anchors.rows(); }
  Eigen::Index count() const { return anchors.cols(); }

  void validate() const;
};

bool all_finite(const Matrix& m);

}  // namespace adapt
