#include "adapt/kernels.hpp"

#include <Eigen/Eigenvalues>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace adapt {

namespace {

double ipow(double base, int exponent) {
  double r = 1.0;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double_field(const std::string& text) {
  double v = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  require(res.ec == std::errc() && res.ptr == text.data() + text.size(),
          ErrorKind::ParseError, "bad numeric value '" + text + "' in kernel spec");
  return v;
}

// Splits "a=0.01,b=0,d=1" into key/value pairs and fills the spec.
void parse_params(KernelSpec& spec, const std::string& params) {
  require(!params.empty(), ErrorKind::ParseError, "kernel spec has no parameters after ':'");
  size_t pos = 0;
  while (pos < params.size()) {
    size_t comma = params.find(',', pos);
    if (comma == std::string::npos) comma = params.size();
    std::string item = params.substr(pos, comma - pos);
    size_t eq = item.find('=');
    require(eq != std::string::npos, ErrorKind::ParseError,
            "expected key=value in kernel spec, got '" + item + "'");
    std::string key = item.substr(0, eq);
    std::string value = item.substr(eq + 1);
    if (key == "a") {
      spec.a = parse_double_field(value);
    } else if (key == "b") {
      spec.b = parse_double_field(value);
    } else if (key == "d") {
      spec.degree = static_cast<int>(parse_double_field(value));
    } else if (key == "sigma") {
      spec.sigma = parse_double_field(value);
    } else {
      fail(ErrorKind::ParseError, "unknown kernel parameter '" + key + "'");
    }
    pos = comma + 1;
  }
}

}  // namespace

KernelSpec KernelSpec::polynomial(double a, double b, int degree) {
  KernelSpec s;
  s.kind = KernelKind::Polynomial;
  s.a = a;
  s.b = b;
  s.degree = degree;
  s.validate();
  return s;
}

KernelSpec KernelSpec::rbf(double sigma) {
  KernelSpec s;
  s.kind = KernelKind::Rbf;
  s.sigma = sigma;
  s.validate();
  return s;
}

KernelSpec KernelSpec::cauchy(double sigma) {
  KernelSpec s;
  s.kind = KernelKind::Cauchy;
  s.sigma = sigma;
  s.validate();
  return s;
}

KernelSpec KernelSpec::exponential(double sigma) {
  KernelSpec s;
  s.kind = KernelKind::Exponential;
  s.sigma = sigma;
  s.validate();
  return s;
}

KernelSpec KernelSpec::parse(const std::string& text) {
  size_t colon = text.find(':');
  require(colon != std::string::npos, ErrorKind::ParseError,
          "kernel spec '" + text + "' is missing ':'");
  std::string name = text.substr(0, colon);
  KernelSpec spec;
  if (name == "poly") {
    spec.kind = KernelKind::Polynomial;
  } else if (name == "rbf") {
    spec.kind = KernelKind::Rbf;
  } else if (name == "cauchy") {
    spec.kind = KernelKind::Cauchy;
  } else if (name == "exp") {
    spec.kind = KernelKind::Exponential;
  } else {
    fail(ErrorKind::ParseError, "unknown kernel family '" + name + "'");
  }
  parse_params(spec, text.substr(colon + 1));
  spec.validate();
  return spec;
}

std::string KernelSpec::to_text() const {
  switch (kind) {
    case KernelKind::Polynomial:
      return "poly:a=" + format_double(a) + ",b=" + format_double(b) +
             ",d=" + std::to_string(degree);
    case KernelKind::Rbf:
      return "rbf:sigma=" + format_double(sigma);
    case KernelKind::Cauchy:
      return "cauchy:sigma=" + format_double(sigma);
    case KernelKind::Exponential:
      return "exp:sigma=" + format_double(sigma);
  }
  return {};
}

void KernelSpec::validate() const {
  if (kind == KernelKind::Polynomial) {
    require(a > 0.0, ErrorKind::InvalidArgument, "polynomial scale a must be positive");
    require(degree >= 1, ErrorKind::InvalidArgument, "polynomial degree must be >= 1");
  } else {
    require(sigma > 0.0, ErrorKind::InvalidArgument, "kernel bandwidth sigma must be positive");
  }
}

double eval_kernel(const KernelSpec& spec, const Eigen::Ref<const Vector>& x,
                   const Eigen::Ref<const Vector>& y) {
  require(x.size() == y.size(), ErrorKind::DimensionMismatch,
          "kernel arguments have different dimensions");
  switch (spec.kind) {
    case KernelKind::Polynomial:
      return ipow(spec.a * x.dot(y) + spec.b, spec.degree);
    case KernelKind::Rbf:
      return std::exp(-(x - y).squaredNorm() / spec.sigma);
    case KernelKind::Cauchy:
      return 1.0 / (1.0 + (x - y).squaredNorm() / spec.sigma);
    case KernelKind::Exponential:
      return std::exp(-(x - y).norm() / spec.sigma);
  }
  return 0.0;
}

Matrix gram(const KernelSpec& spec, const Eigen::Ref<const Matrix>& x) {
  const Eigen::Index n = x.cols();
  Matrix k(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      const double v = eval_kernel(spec, x.col(i), x.col(j));
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

Matrix gram(const KernelSpec& spec, const Eigen::Ref<const Matrix>& x,
            const Eigen::Ref<const Matrix>& y) {
  require(x.rows() == y.rows(), ErrorKind::DimensionMismatch,
          "gram blocks need a shared feature dimension");
  Matrix k(x.cols(), y.cols());
  for (Eigen::Index j = 0; j < y.cols(); ++j)
    for (Eigen::Index i = 0; i < x.cols(); ++i) k(i, j) = eval_kernel(spec, x.col(i), y.col(j));
  return k;
}

Matrix beta_features(const KernelSpec& beta, const AnchorSet& anchors,
                     const Eigen::Ref<const Matrix>& z) {
  anchors.validate();
  require(anchors.dim() == z.rows(), ErrorKind::AnchorDimensionMismatch,
          "anchor dimension does not match sample dimension");
  const Eigen::Index h = anchors.count();
  Matrix phi(h, z.cols());
  for (Eigen::Index j = 0; j < z.cols(); ++j)
    for (Eigen::Index r = 0; r < h; ++r)
      phi(r, j) = eval_kernel(beta, z.col(j), anchors.anchors.col(r));
  return phi;
}

void Pdqk::validate() const {
  base.validate();
  beta.validate();
  anchors.validate();
  const Eigen::Index h = anchors.count();
  require(m.rows() == h && m.cols() == h, ErrorKind::ShapeMismatch,
          "quadratic weight matrix must be H x H");
  require(m.allFinite(), ErrorKind::NonFiniteEntry, "quadratic weight matrix has NaN or Inf");
  require(eta > 0.0, ErrorKind::InvalidArgument, "eta must be positive");
  const double scale = m.norm();
  require((m - m.transpose()).norm() <= 1e-8 * scale + 1e-300, ErrorKind::ShapeMismatch,
          "quadratic weight matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()),
                                           Eigen::EigenvaluesOnly);
  require(es.eigenvalues()(0) >= -1e-8 * std::abs(m.trace()) - 1e-300,
          ErrorKind::InvalidArgument, "quadratic weight matrix is not positive semi-definite");
}

Vector Pdqk::beta_map(const Eigen::Ref<const Vector>& x) const {
  const Eigen::Index h = anchors.count();
  Vector out(h);
  for (Eigen::Index r = 0; r < h; ++r) out(r) = eval_kernel(beta, x, anchors.anchors.col(r));
  return out;
}

double pdqk_eval(const Pdqk& kernel, const Eigen::Ref<const Vector>& x,
                 const Eigen::Ref<const Vector>& y) {
  const Vector bx = kernel.beta_map(x);
  const Vector by = kernel.beta_map(y);
  return eval_kernel(kernel.base, x, y) + kernel.eta * bx.dot(kernel.m * by);
}

Matrix pdqk_gram(const Pdqk& kernel, const Eigen::Ref<const Matrix>& x) {
  kernel.validate();
  Matrix k = gram(kernel.base, x);
  const Matrix phi = beta_features(kernel.beta, kernel.anchors, x);
  const Matrix mphi = kernel.m * phi;
  const Eigen::Index n = x.cols();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      const double q = kernel.eta * phi.col(i).dot(mphi.col(j));
      k(i, j) += q;
      k(j, i) = k(i, j);
    }
  }
  return k;
}

Matrix pdqk_gram(const Pdqk& kernel, const Eigen::Ref<const Matrix>& x,
                 const Eigen::Ref<const Matrix>& y) {
  kernel.validate();
  Matrix k = gram(kernel.base, x, y);
  const Matrix phix = beta_features(kernel.beta, kernel.anchors, x);
  const Matrix phiy = beta_features(kernel.beta, kernel.anchors, y);
  k.noalias() += kernel.eta * phix.transpose() * (kernel.m * phiy);
  return k;
}

bool psd_check(const Eigen::Ref<const Matrix>& k, double rel_tol) {
  if (k.rows() != k.cols() || k.size() == 0) return false;
  if (!k.allFinite()) return false;
  const double scale = k.norm();
  if ((k - k.transpose()).norm() > rel_tol * scale) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (k + k.transpose()),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0) >= -rel_tol * k.trace();
}

Matrix with_jitter(Matrix k, double eps) {
  require(k.rows() == k.cols(), ErrorKind::ShapeMismatch, "jitter needs a square matrix");
  if (eps < 0.0) eps = 1e-10 * k.trace() / static_cast<double>(k.rows());
  k.diagonal().array() += eps;
  return k;
}

}  // namespace adapt
