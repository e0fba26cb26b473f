#include "adapt/mmd.hpp"

namespace adapt {

namespace {

Matrix stack_columns(const DomainPair& pair) {
  const Eigen::Index d = pair.source.dim();
  Matrix x(d, pair.source.count() + pair.target.count());
  x.leftCols(pair.source.count()) = pair.source.data.features;
  x.rightCols(pair.target.count()) = pair.target.data.features;
  return x;
}

}  // namespace

GammaVector gamma_vector(Eigen::Index n_source, Eigen::Index n_target) {
  require(n_source > 0, ErrorKind::ZeroCount, "source sample count must be positive");
  require(n_target > 0, ErrorKind::ZeroCount, "target sample count must be positive");
  GammaVector g;
  g.n_source = n_source;
  g.n_target = n_target;
  g.weights.resize(n_source + n_target);
  g.weights.head(n_source).setConstant(1.0 / static_cast<double>(n_source));
  g.weights.tail(n_target).setConstant(-1.0 / static_cast<double>(n_target));
  return g;
}

JointGram joint_gram(const KernelSpec& spec, const DomainPair& pair) {
  validate_domain_pair(pair);
  JointGram out;
  out.n_source = pair.source.count();
  out.k = gram(spec, stack_columns(pair));
  return out;
}

JointGram joint_gram(const Pdqk& kernel, const DomainPair& pair) {
  validate_domain_pair(pair);
  JointGram out;
  out.n_source = pair.source.count();
  out.k = pdqk_gram(kernel, stack_columns(pair));
  return out;
}

double mmd_value(const JointGram& gram, const GammaVector& gamma) {
  require(gram.size() == gamma.size() && gram.n_source == gamma.n_source,
          ErrorKind::DimensionMismatch, "gram and weight vector sizes disagree");
  return gamma.weights.dot(gram.k * gamma.weights);
}

MmdParts mmd_decomposed(const Pdqk& kernel, const DomainPair& pair) {
  validate_domain_pair(pair);
  kernel.validate();
  const Matrix x = stack_columns(pair);
  const GammaVector gamma = gamma_vector(pair.source.count(), pair.target.count());

  MmdParts parts;
  const Matrix kb = gram(kernel.base, x);
  parts.base_part = gamma.weights.dot(kb * gamma.weights);

  const Matrix phi = beta_features(kernel.beta, kernel.anchors, x);
  const Vector v = phi * gamma.weights;
  parts.learnable_part = kernel.eta * v.dot(kernel.m * v);
  return parts;
}

}  // namespace adapt
