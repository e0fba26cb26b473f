#include "adapt/types.hpp"

namespace adapt {

bool all_finite(const Matrix& m) { return m.allFinite(); }

void DataMatrix::validate() const {
  require(features.rows() >= 1, ErrorKind::EmptyDomain, "feature dimension must be >= 1");
  require(features.cols() >= 1, ErrorKind::EmptyDomain, "sample count must be >= 1");
  require(features.allFinite(), ErrorKind::NonFiniteEntry, "features contain NaN or Inf");
  require(ids.empty() || static_cast<Eigen::Index>(ids.size()) == features.cols(),
          ErrorKind::ShapeMismatch, "id count does not match sample count");
}

Eigen::Index LabeledDataset::labeled_count() const {
  return (labels.array() != kUnlabeled).count();
}

void LabeledDataset::validate() const {
  data.validate();
  require(labels.size() == data.count(), ErrorKind::ShapeMismatch,
          "label count does not match sample count");
}

LabeledDataset LabeledDataset::without_labels() const {
  LabeledDataset out;
  out.data = data;
  out.labels = LabelVector::Constant(data.count(), kUnlabeled);
  return out;
}

void validate_domain_pair(const DomainPair& pair) {
  pair.source.validate();
  pair.target.validate();
  require(pair.source.dim() == pair.target.dim(), ErrorKind::DimensionMismatch,
          "source and target feature dimensions differ");
}

void AnchorSet::validate() const {
  require(anchors.rows() >= 1 && anchors.cols() >= 1, ErrorKind::EmptyDomain,
          "anchor set must be non-empty");
  require(anchors.allFinite(), ErrorKind::NonFiniteEntry, "anchors contain NaN or Inf");
}

}  // namespace adapt
