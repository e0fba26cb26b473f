#include "adapt/spd.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <mutex>

namespace adapt {

namespace {

constexpr double kEigenFloor = 1e-12;

Matrix symmetrized(const Matrix& a) { return 0.5 * (a + a.transpose()); }

void check_square_symmetric(const Matrix& m, ErrorKind kind) {
  require(m.rows() == m.cols() && m.rows() >= 1, kind, "matrix must be square and non-empty");
  require(m.allFinite(), ErrorKind::NonFiniteEntry, "matrix has NaN or Inf entries");
  require((m - m.transpose()).norm() <= 1e-12 * m.norm() + 1e-300, kind,
          "matrix is not symmetric");
}

}  // namespace

TangentMatrix::TangentMatrix(const Matrix& xi) {
  require(xi.rows() == xi.cols() && xi.rows() >= 1, ErrorKind::ShapeMismatch,
          "tangent matrix must be square and non-empty");
  require(xi.allFinite(), ErrorKind::NonFiniteEntry, "tangent matrix has NaN or Inf entries");
  xi_ = symmetrized(xi);
}

TangentMatrix TangentMatrix::zero(Eigen::Index dim) {
  TangentMatrix t;
  t.xi_ = Matrix::Zero(dim, dim);
  return t;
}

struct SpdPoint::Cache {
  std::once_flag once;
  Matrix q;
  Vector lambda;
};

SpdPoint::SpdPoint(const Matrix& m) : cache_(std::make_shared<Cache>()) {
  check_square_symmetric(m, ErrorKind::InvalidArgument);
  m_ = symmetrized(m);
  Eigen::LLT<Matrix> llt(m_);
  require(llt.info() == Eigen::Success, ErrorKind::SingularPoint,
          "matrix is not positive definite");
}

const SpdPoint::Cache& SpdPoint::decomposed() const {
  std::call_once(cache_->once, [this] {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_);
    cache_->q = es.eigenvectors();
    cache_->lambda = es.eigenvalues();
  });
  return *cache_;
}

void SpdPoint::check_floor(const Cache& c) const {
  const double lmax = c.lambda(c.lambda.size() - 1);
  require(c.lambda(0) > kEigenFloor * lmax, ErrorKind::SingularPoint,
          "eigenvalue spread exceeds the invertibility floor");
}

Matrix SpdPoint::solve(const Eigen::Ref<const Matrix>& rhs) const {
  const Cache& c = decomposed();
  check_floor(c);
  return c.q * c.lambda.cwiseInverse().asDiagonal() * (c.q.transpose() * rhs);
}

Matrix SpdPoint::sqrt() const {
  const Cache& c = decomposed();
  return c.q * c.lambda.cwiseSqrt().asDiagonal() * c.q.transpose();
}

Matrix SpdPoint::inv_sqrt() const {
  const Cache& c = decomposed();
  check_floor(c);
  return c.q * c.lambda.cwiseSqrt().cwiseInverse().asDiagonal() * c.q.transpose();
}

double SpdPoint::min_eigenvalue() const { return decomposed().lambda(0); }

TangentMatrix egrad_to_rgrad(const SpdPoint& m, const Eigen::Ref<const Matrix>& egrad) {
  require(egrad.rows() == m.dim() && egrad.cols() == m.dim(), ErrorKind::ShapeMismatch,
          "gradient shape does not match the point");
  const Matrix sym = 0.5 * (egrad + egrad.transpose());
  return TangentMatrix(m.m() * sym * m.m());
}

double metric_inner(const SpdPoint& m, const TangentMatrix& xi, const TangentMatrix& zeta) {
  require(xi.dim() == m.dim() && zeta.dim() == m.dim(), ErrorKind::ShapeMismatch,
          "tangent dimensions do not match the point");
  const Matrix a = m.solve(xi.xi());
  const Matrix b = m.solve(zeta.xi());
  return a.cwiseProduct(b.transpose()).sum();
}

double metric_norm(const SpdPoint& m, const TangentMatrix& xi) {
  return std::sqrt(std::max(0.0, metric_inner(m, xi, xi)));
}

SpdPoint retract(const SpdPoint& m, const TangentMatrix& xi) {
  require(xi.dim() == m.dim(), ErrorKind::ShapeMismatch,
          "tangent dimension does not match the point");
  const Matrix minv_xi = m.solve(xi.xi());
  const Matrix r = symmetrized(m.m() + xi.xi() + 0.5 * xi.xi() * minv_xi);
  try {
    SpdPoint out(r);
    const SpdPoint::Cache& c = out.decomposed();
    require(c.lambda(0) > kEigenFloor * c.lambda(c.lambda.size() - 1),
            ErrorKind::StepTooLarge, "retraction left the positive definite cone");
    return out;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SingularPoint)
      fail(ErrorKind::StepTooLarge, "retraction left the positive definite cone");
    throw;
  }
}

SpdPoint retract_exact(const SpdPoint& m, const TangentMatrix& xi) {
  require(xi.dim() == m.dim(), ErrorKind::ShapeMismatch,
          "tangent dimension does not match the point");
  if (xi.frobenius_norm() == 0.0) return m;
  const Matrix s = m.sqrt();
  const Matrix si = m.inv_sqrt();
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(si * xi.xi() * si));
  const Matrix e = es.eigenvectors() * es.eigenvalues().array().exp().matrix().asDiagonal() *
                   es.eigenvectors().transpose();
  return SpdPoint(symmetrized(s * e * s));
}

TangentMatrix directional_rgrad_diff(const RgradFn& rgrad, const SpdPoint& m,
                                     const TangentMatrix& xi, double h) {
  require(xi.dim() == m.dim(), ErrorKind::ShapeMismatch,
          "tangent dimension does not match the point");
  require(h > 0.0, ErrorKind::InvalidArgument, "finite-difference step must be positive");
  const double norm = xi.frobenius_norm();
  if (norm == 0.0) return TangentMatrix::zero(m.dim());

  const Matrix u = xi.xi() / norm;
  const Matrix minv_u = m.solve(u);
  // Same quadratic retraction formula at step h*u; the probe is tiny so a
  // Cholesky validity check suffices here.
  const Matrix r = symmetrized(m.m() + h * u + (0.5 * h * h) * u * minv_u);
  const SpdPoint probe(r);

  const Matrix g1 = rgrad(probe).xi();
  const Matrix g0 = rgrad(m).xi();
  return TangentMatrix((g1 - g0) * (norm / h));
}

}  // namespace adapt
