#include "adapt/subspace.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include <nlohmann/json.hpp>

namespace adapt {

namespace {

Matrix symmetrized(const Matrix& a) { return 0.5 * (a + a.transpose()); }

// Top-m generalized eigenvectors of B w = lambda * A w for SPD A and
// symmetric PSD B, reduced through the Cholesky factor of A to an ordinary
// symmetric eigenproblem. Columns are rescaled so W' B W = I_m; eigenpairs
// with lambda <= 1e-10 * lambda_max are unusable and discarded.
void solve_constrained(const Matrix& a, const Matrix& b, Eigen::Index m, SubspaceModel& out) {
  const Eigen::Index n = a.rows();
  require(m >= 1, ErrorKind::InvalidArgument, "subspace dimension must be >= 1");
  require(m <= n, ErrorKind::InvalidArgument, "subspace dimension exceeds sample count");

  Eigen::LLT<Matrix> llt(a);
  require(llt.info() == Eigen::Success, ErrorKind::SingularPoint,
          "regularized operator is not positive definite");

  // S = L^-1 B L^-T shares eigenvalues with the generalized problem.
  const Matrix half = llt.matrixL().solve(b);
  const Matrix s = symmetrized(llt.matrixL().solve(half.transpose()));
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  require(es.info() == Eigen::Success, ErrorKind::SingularPoint,
          "eigendecomposition failed");

  const Vector& values = es.eigenvalues();  // ascending
  const double lambda_max = values(n - 1);
  const double floor = 1e-10 * std::max(lambda_max, 0.0);

  Eigen::Index usable = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (values(i) > floor && values(i) > 0.0) ++usable;
  require(usable >= m, ErrorKind::RankDeficiency,
          "constraint matrix supports fewer directions than requested");

  out.m = m;
  out.w.resize(n, m);
  out.eigenvalues.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index idx = n - 1 - i;
    const double lambda = values(idx);
    Vector w = llt.matrixU().solve(es.eigenvectors().col(idx));
    out.w.col(i) = w / std::sqrt(lambda);
    out.eigenvalues(i) = lambda;
  }
  out.constraint_residual =
      (out.w.transpose() * b * out.w - Matrix::Identity(m, m)).norm();
}

void check_fit_inputs(const JointGram& gram, const GammaVector& gamma, double mu) {
  require(gram.size() >= 2, ErrorKind::EmptyDomain, "need at least two samples");
  require(gram.size() == gamma.size() && gram.n_source == gamma.n_source,
          ErrorKind::DimensionMismatch, "gram and weight vector sizes disagree");
  require(mu > 0.0, ErrorKind::InvalidArgument, "mu must be positive");
}

}  // namespace

const char* to_string(SubspaceMethod method) {
  switch (method) {
    case SubspaceMethod::Tca: return "tca";
    case SubspaceMethod::Sstca: return "sstca";
    case SubspaceMethod::Iglda: return "iglda";
  }
  return "unknown";
}

SubspaceMethod parse_subspace_method(const std::string& text) {
  if (text == "tca") return SubspaceMethod::Tca;
  if (text == "sstca") return SubspaceMethod::Sstca;
  if (text == "iglda") return SubspaceMethod::Iglda;
  fail(ErrorKind::ParseError, "unknown subspace method '" + text + "'");
}

Matrix centering_matrix(Eigen::Index n) {
  require(n >= 1, ErrorKind::ZeroCount, "centering matrix needs n >= 1");
  Matrix h = Matrix::Identity(n, n);
  h.array() -= 1.0 / static_cast<double>(n);
  return h;
}

Matrix mmd_matrix(const GammaVector& gamma) {
  return gamma.weights * gamma.weights.transpose();
}

double median_pairwise_distance(const Eigen::Ref<const Matrix>& x) {
  const Eigen::Index n = x.cols();
  require(n >= 2, ErrorKind::EmptyDomain, "need at least two samples");
  std::vector<double> dists;
  dists.reserve(static_cast<size_t>(n * (n - 1) / 2));
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < j; ++i) dists.push_back((x.col(i) - x.col(j)).norm());
  const size_t mid = dists.size() / 2;
  std::nth_element(dists.begin(), dists.begin() + mid, dists.end());
  return dists[mid];
}

Matrix graph_laplacian(const Eigen::Ref<const Matrix>& x, int k_neighbors, double bandwidth) {
  const Eigen::Index n = x.cols();
  require(n >= 2, ErrorKind::EmptyDomain, "need at least two samples");
  require(k_neighbors >= 1 && k_neighbors < n, ErrorKind::InvalidArgument,
          "neighbour count must lie in [1, N-1]");
  require(bandwidth > 0.0, ErrorKind::InvalidArgument, "bandwidth must be positive");

  Matrix dist2(n, n);
  dist2.setZero();
  double max_dist2 = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      const double d2 = (x.col(i) - x.col(j)).squaredNorm();
      dist2(i, j) = d2;
      dist2(j, i) = d2;
      max_dist2 = std::max(max_dist2, d2);
    }
  }
  require(max_dist2 > 0.0, ErrorKind::DegenerateData, "all samples are identical");

  // Directed k-NN lists, ties broken by index.
  std::vector<std::vector<Eigen::Index>> nearest(static_cast<size_t>(n));
  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    order.clear();
    for (Eigen::Index j = 0; j < n; ++j)
      if (j != i) order.push_back(j);
    std::partial_sort(order.begin(), order.begin() + k_neighbors, order.end(),
                      [&](Eigen::Index p, Eigen::Index q) {
                        if (dist2(i, p) != dist2(i, q)) return dist2(i, p) < dist2(i, q);
                        return p < q;
                      });
    nearest[static_cast<size_t>(i)].assign(order.begin(), order.begin() + k_neighbors);
  }

  Matrix weights = Matrix::Zero(n, n);
  const double denom = 2.0 * bandwidth * bandwidth;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j : nearest[static_cast<size_t>(i)]) {
      const double w = std::exp(-dist2(i, j) / denom);
      weights(i, j) = w;
      weights(j, i) = w;
    }
  }

  Matrix laplacian = -weights;
  for (Eigen::Index i = 0; i < n; ++i) laplacian(i, i) = weights.row(i).sum();
  return laplacian;
}

Matrix label_kernel(const LabelVector& labels, double gamma_mix) {
  require(gamma_mix >= 0.0 && gamma_mix <= 1.0, ErrorKind::InvalidArgument,
          "gamma_mix must lie in [0, 1]");
  const Eigen::Index n = labels.size();
  require(n >= 1, ErrorKind::ZeroCount, "label kernel needs n >= 1");
  Matrix k = (1.0 - gamma_mix) * Matrix::Identity(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (labels(j) == kUnlabeled) continue;
    for (Eigen::Index i = 0; i < n; ++i)
      if (labels(i) == labels(j)) k(i, j) += gamma_mix;
  }
  return k;
}

Matrix intra_class_matrix(const LabelVector& labels, Eigen::Index n_source) {
  const Eigen::Index n = labels.size();
  require(n_source >= 1 && n_source <= n, ErrorKind::InvalidArgument,
          "source count must lie in [1, N]");
  std::map<int, std::vector<Eigen::Index>> classes;
  for (Eigen::Index i = 0; i < n_source; ++i) {
    require(labels(i) != kUnlabeled, ErrorKind::UnlabeledSource,
            "source sample " + std::to_string(i) + " is unlabeled");
    classes[labels(i)].push_back(i);
  }
  Matrix l = Matrix::Zero(n, n);
  const double scale = 1.0 / static_cast<double>(n_source);
  for (const auto& [label, members] : classes) {
    const double inv_count = 1.0 / static_cast<double>(members.size());
    for (Eigen::Index i : members)
      for (Eigen::Index j : members) l(i, j) = scale * ((i == j ? 1.0 : 0.0) - inv_count);
  }
  return l;
}

SubspaceModel tca_fit(const JointGram& gram, const GammaVector& gamma, double mu,
                      Eigen::Index m) {
  check_fit_inputs(gram, gamma, mu);
  const Eigen::Index n = gram.size();
  const Vector kg = gram.k * gamma.weights;
  Matrix a = kg * kg.transpose();
  a.diagonal().array() += mu;
  const Matrix b = symmetrized(gram.k * centering_matrix(n) * gram.k);

  SubspaceModel model;
  model.method = SubspaceMethod::Tca;
  solve_constrained(a, b, m, model);
  model.train_gram = std::make_shared<const Matrix>(gram.k);
  return model;
}

SubspaceModel sstca_fit(const JointGram& gram, const GammaVector& gamma,
                        const Eigen::Ref<const Matrix>& laplacian,
                        const Eigen::Ref<const Matrix>& label_gram, double mu, double lambda,
                        Eigen::Index m) {
  check_fit_inputs(gram, gamma, mu);
  const Eigen::Index n = gram.size();
  require(laplacian.rows() == n && laplacian.cols() == n, ErrorKind::ShapeMismatch,
          "laplacian shape does not match the gram");
  require(label_gram.rows() == n && label_gram.cols() == n, ErrorKind::ShapeMismatch,
          "label kernel shape does not match the gram");
  require(lambda >= 0.0, ErrorKind::InvalidArgument, "lambda must be non-negative");

  const double nn = static_cast<double>(n) * static_cast<double>(n);
  const Matrix inner = mmd_matrix(gamma) + (lambda / nn) * laplacian;
  Matrix a = symmetrized(gram.k * inner * gram.k);
  a.diagonal().array() += mu;

  const Matrix hc = centering_matrix(n);
  const Matrix khc = gram.k * hc;
  const Matrix b = symmetrized(khc * label_gram * khc.transpose());

  SubspaceModel model;
  model.method = SubspaceMethod::Sstca;
  solve_constrained(a, b, m, model);
  model.train_gram = std::make_shared<const Matrix>(gram.k);
  return model;
}

SubspaceModel iglda_fit(const JointGram& gram, const GammaVector& gamma,
                        const Eigen::Ref<const Matrix>& intra_class, double mu, double lambda,
                        Eigen::Index m) {
  check_fit_inputs(gram, gamma, mu);
  const Eigen::Index n = gram.size();
  require(intra_class.rows() == n && intra_class.cols() == n, ErrorKind::ShapeMismatch,
          "intra-class matrix shape does not match the gram");
  require(lambda >= 0.0, ErrorKind::InvalidArgument, "lambda must be non-negative");

  const Matrix inner = mmd_matrix(gamma) + lambda * intra_class;
  Matrix a = symmetrized(gram.k * inner * gram.k);
  a.diagonal().array() += mu;
  const Matrix b = symmetrized(gram.k * centering_matrix(n) * gram.k);

  SubspaceModel model;
  model.method = SubspaceMethod::Iglda;
  solve_constrained(a, b, m, model);
  model.train_gram = std::make_shared<const Matrix>(gram.k);
  return model;
}

Matrix project(const SubspaceModel& model, const Eigen::Ref<const Matrix>& gram_columns) {
  require(model.w.size() > 0, ErrorKind::InvalidArgument, "model is not fitted");
  require(gram_columns.rows() == model.w.rows(), ErrorKind::DimensionMismatch,
          "gram columns do not match the training sample count");
  return model.w.transpose() * gram_columns;
}

std::string SubspaceModel::to_json() const {
  nlohmann::ordered_json j;
  j["method"] = adapt::to_string(method);
  j["m"] = m;
  j["rows"] = w.rows();
  std::vector<double> data;
  data.reserve(static_cast<size_t>(w.size()));
  for (Eigen::Index i = 0; i < w.rows(); ++i)
    for (Eigen::Index c = 0; c < w.cols(); ++c) data.push_back(w(i, c));
  j["w"] = std::move(data);
  j["constraint_residual"] = constraint_residual;
  std::vector<double> ev(eigenvalues.data(), eigenvalues.data() + eigenvalues.size());
  j["eigenvalues"] = std::move(ev);
  return j.dump(2);
}

}  // namespace adapt
