#include <doctest.h>

#include "adapt/mmd.hpp"
#include "adapt/synthetic.hpp"

using namespace adapt;

namespace {

double base_mmd(const DomainPair& pair) {
  const JointGram gram = joint_gram(KernelSpec::rbf(5.0), pair);
  return mmd_value(gram, gamma_vector(pair.source.count(), pair.target.count()));
}

}  // namespace

TEST_SUITE("synthetic") {

TEST_CASE("kind names round trip") {
  for (SyntheticKind k : {SyntheticKind::ShiftedGaussians, SyntheticKind::RotatedMoons})
    CHECK(parse_synthetic_kind(to_string(k)) == k);
  CHECK_THROWS_AS(parse_synthetic_kind("spirals"), Error);
}

TEST_CASE("shapes and labeling") {
  const DomainPair pair =
      generate_synthetic(SyntheticKind::ShiftedGaussians, 25, 1.0, 5, 4);
  CHECK(pair.source.count() == 50);
  CHECK(pair.target.count() == 50);
  CHECK(pair.source.dim() == 4);
  CHECK(pair.source.labeled_count() == 50);
  CHECK(pair.target.labeled_count() == 50);

  int zeros = 0;
  for (Eigen::Index i = 0; i < 50; ++i) zeros += pair.source.labels(i) == 0 ? 1 : 0;
  CHECK(zeros == 25);

  // Moons are planar regardless of the requested dimension.
  const DomainPair moons =
      generate_synthetic(SyntheticKind::RotatedMoons, 10, 0.5, 5, 7);
  CHECK(moons.source.dim() == 2);

  CHECK_THROWS_AS(generate_synthetic(SyntheticKind::ShiftedGaussians, 1, 0.0, 5), Error);
  CHECK_THROWS_AS(generate_synthetic(SyntheticKind::ShiftedGaussians, 5, 0.0, 5, 0), Error);
}

TEST_CASE("deterministic per seed") {
  const DomainPair a = generate_synthetic(SyntheticKind::ShiftedGaussians, 10, 2.0, 7);
  const DomainPair b = generate_synthetic(SyntheticKind::ShiftedGaussians, 10, 2.0, 7);
  CHECK(a.source.data.features == b.source.data.features);
  CHECK(a.target.data.features == b.target.data.features);
  CHECK(a.source.labels == b.source.labels);

  const DomainPair c = generate_synthetic(SyntheticKind::ShiftedGaussians, 10, 2.0, 8);
  CHECK(a.source.data.features != c.source.data.features);
}

TEST_CASE("shift controls the domain gap") {
  for (SyntheticKind kind :
       {SyntheticKind::ShiftedGaussians, SyntheticKind::RotatedMoons}) {
    const DomainPair close = generate_synthetic(kind, 60, 0.0, 11);
    const DomainPair far = generate_synthetic(kind, 60, 2.0, 11);
    const double near_gap = base_mmd(close);
    const double far_gap = base_mmd(far);
    CHECK(near_gap < 0.05);
    CHECK(far_gap > 5.0 * near_gap);
  }
}

}  // TEST_SUITE
