#include "adapt/learner.hpp"

#include <random>

#include <nlohmann/json.hpp>

namespace adapt {

namespace {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const Matrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<double> data;
  data.reserve(static_cast<size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(i, c));
  j["data"] = std::move(data);
  return j;
}

Matrix matrix_from_json(const Json& j) {
  const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
  const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
  const auto data = j.at("data").get<std::vector<double>>();
  require(static_cast<Eigen::Index>(data.size()) == rows * cols, ErrorKind::ParseError,
          "matrix payload size disagrees with its shape");
  Matrix m(rows, cols);
  size_t pos = 0;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = data[pos++];
  return m;
}

}  // namespace

double learn_objective(const SpdPoint& m, const Eigen::Ref<const Vector>& v, double mu) {
  require(v.size() == m.dim(), ErrorKind::DimensionMismatch,
          "weight vector length does not match the point dimension");
  return v.dot(m.m() * v) + mu * m.m().squaredNorm();
}

Matrix learn_objective_gradient(const SpdPoint& m, const Eigen::Ref<const Vector>& v,
                                double mu) {
  require(v.size() == m.dim(), ErrorKind::DimensionMismatch,
          "weight vector length does not match the point dimension");
  return v * v.transpose() + 2.0 * mu * m.m();
}

Matrix initial_spd(Eigen::Index dim, std::uint64_t seed) {
  require(dim >= 1, ErrorKind::InvalidArgument, "dimension must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) a(i, j) = normal(rng);
  Matrix m = a * a.transpose();
  m.diagonal().array() += 1e-3;
  return 0.5 * (m + m.transpose());
}

LearnedKernel learn(const LearnerInputs& inputs) {
  validate_domain_pair(inputs.pair);
  inputs.anchors.validate();
  inputs.base.validate();
  inputs.beta.validate();
  require(inputs.anchors.dim() == inputs.pair.source.dim(),
          ErrorKind::AnchorDimensionMismatch,
          "anchor dimension does not match the data dimension");
  require(inputs.mu > 0.0, ErrorKind::InvalidArgument, "mu must be positive");
  require(inputs.eta > 0.0, ErrorKind::InvalidArgument, "eta must be positive");

  const Eigen::Index ns = inputs.pair.source.count();
  const Eigen::Index nt = inputs.pair.target.count();
  const Eigen::Index d = inputs.pair.source.dim();

  Matrix x(d, ns + nt);
  x.leftCols(ns) = inputs.pair.source.data.features;
  x.rightCols(nt) = inputs.pair.target.data.features;

  const Matrix phi = beta_features(inputs.beta, inputs.anchors, x);
  const GammaVector gamma = gamma_vector(ns, nt);
  const Vector v = phi * gamma.weights;
  const double mu = inputs.mu;

  TrProblem problem;
  problem.dim = inputs.anchors.count();
  problem.objective = [v, mu](const SpdPoint& m) { return learn_objective(m, v, mu); };
  problem.euclidean_gradient = [v, mu](const SpdPoint& m) {
    return learn_objective_gradient(m, v, mu);
  };

  const SpdPoint m0(initial_spd(inputs.anchors.count(), inputs.seed));
  TrResult solved = tr_minimize(problem, m0, inputs.tr_settings);

  LearnedKernel out;
  out.pdqk.base = inputs.base;
  out.pdqk.beta = inputs.beta;
  out.pdqk.anchors = inputs.anchors;
  out.pdqk.m = solved.minimizer.m();
  out.pdqk.eta = inputs.eta;
  out.diagnostics = std::move(solved.trace);
  out.mmd_before = inputs.eta * v.dot(m0.m() * v);
  out.mmd_after = inputs.eta * v.dot(out.pdqk.m * v);
  return out;
}

std::function<double(const Vector&, const Vector&)> final_kernel_closure(
    const LearnedKernel& learned) {
  const Pdqk kernel = learned.pdqk;
  kernel.validate();
  return [kernel](const Vector& x, const Vector& y) { return pdqk_eval(kernel, x, y); };
}

std::string LearnedKernel::to_json() const {
  Json j;
  j["kernel_base"] = pdqk.base.to_text();
  j["kernel_beta"] = pdqk.beta.to_text();
  j["eta"] = pdqk.eta;
  j["anchors"] = matrix_to_json(pdqk.anchors.anchors);
  j["weights"] = matrix_to_json(pdqk.m);
  Json diag;
  diag["outer_iterations"] = diagnostics.iterations.size();
  diag["accepted_steps"] = diagnostics.accepted_steps;
  diag["stop"] = adapt::to_string(diagnostics.stop);
  diag["mmd_before"] = mmd_before;
  diag["mmd_after"] = mmd_after;
  j["diagnostics"] = std::move(diag);
  return j.dump(2);
}

LearnedKernel LearnedKernel::from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("bad kernel document: ") + e.what());
  }
  LearnedKernel out;
  try {
    out.pdqk.base = KernelSpec::parse(j.at("kernel_base").get<std::string>());
    out.pdqk.beta = KernelSpec::parse(j.at("kernel_beta").get<std::string>());
    out.pdqk.eta = j.at("eta").get<double>();
    out.pdqk.anchors.anchors = matrix_from_json(j.at("anchors"));
    out.pdqk.m = matrix_from_json(j.at("weights"));
    out.mmd_before = j.at("diagnostics").at("mmd_before").get<double>();
    out.mmd_after = j.at("diagnostics").at("mmd_after").get<double>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("bad kernel document: ") + e.what());
  }
  out.pdqk.validate();
  return out;
}

}  // namespace adapt
