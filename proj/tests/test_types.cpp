#include <doctest.h>

#include "adapt/types.hpp"
#include "helpers.hpp"

using namespace adapt;

TEST_SUITE("types") {

TEST_CASE("data matrix validation") {
  DataMatrix d;
  d.features = Matrix::Ones(3, 4);
  CHECK_NOTHROW(d.validate());
  CHECK(d.dim() == 3);
  CHECK(d.count() == 4);

  SUBCASE("empty rejected") {
    d.features.resize(3, 0);
    CHECK_THROWS_AS(d.validate(), Error);
  }
  SUBCASE("non-finite rejected") {
    d.features(1, 2) = std::numeric_limits<double>::quiet_NaN();
    try {
      d.validate();
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NonFiniteEntry);
    }
  }
  SUBCASE("id count must match") {
    d.ids = {"a", "b"};
    CHECK_THROWS_AS(d.validate(), Error);
    d.ids = {"a", "b", "c", "d"};
    CHECK_NOTHROW(d.validate());
  }
}

TEST_CASE("labeled dataset") {
  LabeledDataset set;
  set.data.features = Matrix::Ones(2, 3);
  set.labels.resize(3);
  set.labels << 0, kUnlabeled, 1;
  set.validate();
  CHECK(set.labeled_count() == 2);

  const LabeledDataset stripped = set.without_labels();
  CHECK(stripped.labeled_count() == 0);
  CHECK((stripped.labels.array() == kUnlabeled).all());
  CHECK(stripped.data.features == set.data.features);

  set.labels.resize(2);
  CHECK_THROWS_AS(set.validate(), Error);
}

TEST_CASE("domain pair dimension check") {
  std::mt19937_64 rng(11);
  DomainPair pair = testutil::random_pair(3, 4, rng);
  CHECK_NOTHROW(validate_domain_pair(pair));

  pair.target.data.features = Matrix::Ones(4, 8);
  pair.target.labels = LabelVector::Zero(8);
  try {
    validate_domain_pair(pair);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("anchor set validation") {
  AnchorSet anchors;
  anchors.anchors = Matrix::Ones(2, 5);
  CHECK_NOTHROW(anchors.validate());
  CHECK(anchors.dim() == 2);
  CHECK(anchors.count() == 5);

  anchors.anchors.resize(2, 0);
  CHECK_THROWS_AS(anchors.validate(), Error);
}

}  // TEST_SUITE
