#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "adapt/kernels.hpp"
#include "helpers.hpp"

using namespace adapt;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Pdqk make_pdqk(const KernelSpec& base, const KernelSpec& beta, const Matrix& anchors,
               const Matrix& m, double eta = 1.0) {
  Pdqk k;
  k.base = base;
  k.beta = beta;
  k.anchors.anchors = anchors;
  k.m = m;
  k.eta = eta;
  k.validate();
  return k;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("closed-form evaluations") {
  CHECK(eval_kernel(KernelSpec::polynomial(1, 0, 1), vec2(1, 2), vec2(3, 4)) == 11.0);

  std::mt19937_64 rng(3);
  const Vector x = testutil::random_vector(4, rng);
  CHECK(eval_kernel(KernelSpec::rbf(3.0), x, x) == 1.0);

  // Independent scalar evaluation: 1 / (1 + 10^2 / 1000).
  Vector a(1), b(1);
  a << 0.0;
  b << 10.0;
  const double oracle = 1.0 / (1.0 + (10.0 * 10.0) / 1000.0);
  CHECK(eval_kernel(KernelSpec::cauchy(1000.0), a, b) == doctest::Approx(oracle).epsilon(1e-14));

  CHECK(eval_kernel(KernelSpec::exponential(1.0), a, b) ==
        doctest::Approx(std::exp(-10.0)).epsilon(1e-14));

  CHECK_THROWS_AS(eval_kernel(KernelSpec::rbf(1.0), a, vec2(0, 1)), Error);
}

TEST_CASE("evaluation symmetry holds exactly for every variant") {
  std::mt19937_64 rng(17);
  const KernelSpec specs[] = {KernelSpec::polynomial(0.7, 0.2, 3), KernelSpec::rbf(2.0),
                              KernelSpec::cauchy(5.0), KernelSpec::exponential(0.8)};
  for (int rep = 0; rep < 25; ++rep) {
    const Vector x = testutil::random_vector(5, rng);
    const Vector y = testutil::random_vector(5, rng);
    for (const KernelSpec& s : specs) CHECK(eval_kernel(s, x, y) == eval_kernel(s, y, x));
  }
}

TEST_CASE("bounded variants lie in (0,1] and peak only at x == y") {
  std::mt19937_64 rng(19);
  const KernelSpec specs[] = {KernelSpec::rbf(2.0), KernelSpec::cauchy(5.0),
                              KernelSpec::exponential(0.8)};
  for (int rep = 0; rep < 25; ++rep) {
    const Vector x = testutil::random_vector(4, rng);
    Vector y = testutil::random_vector(4, rng);
    for (const KernelSpec& s : specs) {
      const double v = eval_kernel(s, x, y);
      CHECK(v > 0.0);
      CHECK(v < 1.0);  // distinct draws almost surely differ
      CHECK(eval_kernel(s, x, x) == 1.0);
    }
  }
}

TEST_CASE("gram matrices") {
  Matrix one_col(3, 1);
  one_col << 1, 2, 3;
  CHECK(gram(KernelSpec::rbf(1.0), one_col) == Matrix::Ones(1, 1));

  CHECK(gram(KernelSpec::polynomial(1, 0, 1), Matrix::Identity(2, 2)) == Matrix::Identity(2, 2));

  std::mt19937_64 rng(23);
  const Matrix x = testutil::random_matrix(4, 9, rng);
  for (const KernelSpec& s : {KernelSpec::polynomial(0.3, 0.1, 2), KernelSpec::rbf(2.0),
                              KernelSpec::cauchy(3.0), KernelSpec::exponential(1.5)}) {
    const Matrix k = gram(s, x);
    CHECK(k == k.transpose().eval());  // exact, by mirror construction

    // Rectangular form agrees with the scalar evaluations.
    const Matrix kx = gram(s, x, x);
    for (Eigen::Index i = 0; i < x.cols(); ++i)
      for (Eigen::Index j = 0; j < x.cols(); ++j)
        CHECK(kx(i, j) == doctest::Approx(eval_kernel(s, x.col(i), x.col(j))).epsilon(1e-14));
  }
}

TEST_CASE("beta feature layout") {
  std::mt19937_64 rng(29);

  AnchorSet single;
  single.anchors = testutil::random_matrix(3, 1, rng);
  CHECK(beta_features(KernelSpec::rbf(2.0), single, single.anchors) == Matrix::Ones(1, 1));

  const Matrix z = testutil::random_matrix(3, 4, rng);
  Matrix doubled(3, 8);
  doubled << z, z;
  AnchorSet anchors;
  anchors.anchors = testutil::random_matrix(3, 5, rng);
  const Matrix phi = beta_features(KernelSpec::cauchy(2.0), anchors, doubled);
  CHECK(phi.leftCols(4) == phi.rightCols(4));

  // Linear kernel against standard-basis anchors reads out coordinates.
  AnchorSet basis;
  basis.anchors = Matrix::Identity(3, 3);
  const Matrix coords = beta_features(KernelSpec::polynomial(1, 0, 1), basis, z);
  CHECK(coords.rows() == 3);
  for (Eigen::Index h = 0; h < 3; ++h)
    for (Eigen::Index j = 0; j < 4; ++j)
      CHECK(coords(h, j) == doctest::Approx(z(h, j)).epsilon(1e-14));
}

TEST_CASE("pdqk scalar evaluation") {
  std::mt19937_64 rng(31);
  const Matrix anchors = testutil::random_matrix(3, 4, rng);
  const Vector x = testutil::random_vector(3, rng);
  const Vector y = testutil::random_vector(3, rng);

  SUBCASE("zero weight matrix reduces to the base kernel") {
    const Pdqk k = make_pdqk(KernelSpec::rbf(2.0), KernelSpec::cauchy(3.0), anchors,
                             Matrix::Zero(4, 4));
    CHECK(pdqk_eval(k, x, y) == eval_kernel(k.base, x, y));
  }

  SUBCASE("identity weights at an anchor add exactly eta") {
    const Pdqk k = make_pdqk(KernelSpec::polynomial(1, 0, 1), KernelSpec::rbf(2.0),
                             anchors.col(0), Matrix::Identity(1, 1));
    const Vector at = anchors.col(0);
    CHECK(pdqk_eval(k, at, at) ==
          doctest::Approx(eval_kernel(k.base, at, at) + 1.0).epsilon(1e-14));
  }

  SUBCASE("matches the block-assembled form") {
    const Matrix m = testutil::random_spd(4, rng);
    const Pdqk k = make_pdqk(KernelSpec::rbf(2.0), KernelSpec::cauchy(3.0), anchors, m, 0.7);
    Matrix xy(3, 2);
    xy << x, y;
    const Matrix phi = beta_features(k.beta, k.anchors, xy);
    const Matrix oracle =
        gram(k.base, xy) + k.eta * phi.transpose() * m * phi;
    CHECK(pdqk_eval(k, x, y) == doctest::Approx(oracle(0, 1)).epsilon(1e-10));
  }
}

TEST_CASE("pdqk gram") {
  std::mt19937_64 rng(37);
  const Matrix anchors = testutil::random_matrix(3, 5, rng);
  const Matrix x = testutil::random_matrix(3, 8, rng);

  SUBCASE("zero weights give the base gram") {
    const Pdqk k = make_pdqk(KernelSpec::rbf(2.0), KernelSpec::rbf(1.0), anchors,
                             Matrix::Zero(5, 5), 3.0);
    CHECK(pdqk_gram(k, x) == gram(k.base, x));
  }

  SUBCASE("symmetric, eigenvalues above the floor, scalar-consistent") {
    const Matrix m = testutil::random_spd(5, rng);
    const Pdqk k = make_pdqk(KernelSpec::polynomial(0.5, 0.1, 2), KernelSpec::cauchy(2.0),
                             anchors, m, 0.9);
    const Matrix kg = pdqk_gram(k, x);
    CHECK(kg == kg.transpose().eval());

    Eigen::SelfAdjointEigenSolver<Matrix> eig(kg);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-8 * kg.trace());

    for (Eigen::Index i = 0; i < x.cols(); ++i)
      for (Eigen::Index j = 0; j < x.cols(); ++j)
        CHECK(std::abs(kg(i, j) - pdqk_eval(k, x.col(i), x.col(j))) <= 1e-10);

    const Matrix rect = pdqk_gram(k, x, x.leftCols(3));
    CHECK(rect.rows() == 8);
    CHECK(rect.cols() == 3);
    for (Eigen::Index i = 0; i < 8; ++i)
      for (Eigen::Index j = 0; j < 3; ++j)
        CHECK(std::abs(rect(i, j) - kg(i, j)) <= 1e-12);
  }
}

TEST_CASE("pdqk validation") {
  std::mt19937_64 rng(41);
  const Matrix anchors = testutil::random_matrix(2, 3, rng);

  Pdqk k;
  k.base = KernelSpec::rbf(1.0);
  k.beta = KernelSpec::rbf(1.0);
  k.anchors.anchors = anchors;
  k.m = Matrix::Zero(3, 3);  // PSD boundary is allowed
  CHECK_NOTHROW(k.validate());

  SUBCASE("shape") {
    k.m = Matrix::Zero(2, 3);
    CHECK_THROWS_AS(k.validate(), Error);
  }
  SUBCASE("asymmetry") {
    k.m = Matrix::Zero(3, 3);
    k.m(0, 1) = 1.0;
    CHECK_THROWS_AS(k.validate(), Error);
  }
  SUBCASE("negative eigenvalue") {
    k.m = -Matrix::Identity(3, 3);
    CHECK_THROWS_AS(k.validate(), Error);
  }
  SUBCASE("eta") {
    k.eta = 0.0;
    CHECK_THROWS_AS(k.validate(), Error);
  }
}

TEST_CASE("psd check") {
  CHECK(psd_check(Matrix::Identity(4, 4), 1e-8));

  Matrix indefinite = Matrix::Zero(2, 2);
  indefinite(0, 0) = 1.0;
  indefinite(1, 1) = -1.0;
  CHECK_FALSE(psd_check(indefinite, 1e-8));

  Matrix skew = Matrix::Identity(2, 2);
  skew(0, 1) = 0.5;
  CHECK_FALSE(psd_check(skew, 1e-8));

  std::mt19937_64 rng(43);
  for (int rep = 0; rep < 10; ++rep) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 29);
    const Matrix x = testutil::random_matrix(3, n, rng);
    const Matrix anchors = testutil::random_matrix(3, 4, rng);
    const Matrix m = testutil::random_spd(4, rng);
    const Pdqk k = make_pdqk(KernelSpec::rbf(2.0), KernelSpec::exponential(1.0), anchors, m);
    CHECK(psd_check(pdqk_gram(k, x), 1e-8));
  }
}

TEST_CASE("jitter") {
  Matrix k = Matrix::Identity(3, 3) * 2.0;
  const Matrix jittered = with_jitter(k, 0.5);
  CHECK(jittered == (k + 0.5 * Matrix::Identity(3, 3)));

  const Matrix defaulted = with_jitter(k);
  CHECK(defaulted(0, 0) == doctest::Approx(2.0 + 1e-10 * 6.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("text forms round-trip") {
  for (const std::string text : {"poly:a=0.01,b=0,d=1", "rbf:sigma=3", "cauchy:sigma=1000",
                                 "exp:sigma=1"}) {
    const KernelSpec spec = KernelSpec::parse(text);
    CHECK(KernelSpec::parse(spec.to_text()).to_text() == spec.to_text());
  }
  CHECK(KernelSpec::parse("poly:a=0.01,b=0,d=1").kind == KernelKind::Polynomial);
  CHECK(KernelSpec::parse("rbf:sigma=3").sigma == 3.0);

  CHECK_THROWS_AS(KernelSpec::parse("spline:sigma=1"), Error);
  CHECK_THROWS_AS(KernelSpec::parse("rbf:sigma=0"), Error);
  CHECK_THROWS_AS(KernelSpec::parse("rbf:sigma=-2"), Error);
  CHECK_THROWS_AS(KernelSpec::parse("poly:a=0,b=0,d=1"), Error);
  CHECK_THROWS_AS(KernelSpec::parse("poly:a=1,b=0,d=0"), Error);
  CHECK_THROWS_AS(KernelSpec::parse("rbf:"), Error);
}

}  // TEST_SUITE
