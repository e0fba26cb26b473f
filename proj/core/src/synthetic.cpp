#include "adapt/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace adapt {

namespace {

constexpr double kClassSeparation = 4.0;
constexpr double kMoonNoise = 0.1;

LabeledDataset gaussian_block(std::mt19937_64& rng, int n_per_class, int dim,
                              const Vector& offset) {
  std::normal_distribution<double> normal(0.0, 1.0);
  LabeledDataset out;
  out.data.features.resize(dim, 2 * n_per_class);
  out.labels.resize(2 * n_per_class);
  for (int c = 0; c < 2; ++c) {
    Vector mean = offset;
    mean(0) += kClassSeparation * c;
    for (int i = 0; i < n_per_class; ++i) {
      const Eigen::Index col = c * n_per_class + i;
      for (int r = 0; r < dim; ++r) out.data.features(r, col) = mean(r) + normal(rng);
      out.labels(col) = c;
    }
  }
  return out;
}

LabeledDataset moons_block(std::mt19937_64& rng, int n_per_class, double rotation) {
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::normal_distribution<double> noise(0.0, kMoonNoise);
  const double centre_x = 0.5;
  const double centre_y = 0.25;
  const double cr = std::cos(rotation);
  const double sr = std::sin(rotation);

  LabeledDataset out;
  out.data.features.resize(2, 2 * n_per_class);
  out.labels.resize(2 * n_per_class);
  for (int c = 0; c < 2; ++c) {
    for (int i = 0; i < n_per_class; ++i) {
      const double t = angle(rng);
      double x = c == 0 ? std::cos(t) : 1.0 - std::cos(t);
      double y = c == 0 ? std::sin(t) : 0.5 - std::sin(t);
      x += noise(rng);
      y += noise(rng);
      const double dx = x - centre_x;
      const double dy = y - centre_y;
      const Eigen::Index col = c * n_per_class + i;
      out.data.features(0, col) = centre_x + cr * dx - sr * dy;
      out.data.features(1, col) = centre_y + sr * dx + cr * dy;
      out.labels(col) = c;
    }
  }
  return out;
}

}  // namespace

SyntheticKind parse_synthetic_kind(const std::string& text) {
  if (text == "shifted-gaussians") return SyntheticKind::ShiftedGaussians;
  if (text == "rotated-moons") return SyntheticKind::RotatedMoons;
  fail(ErrorKind::ParseError, "unknown synthetic kind '" + text + "'");
}

const char* to_string(SyntheticKind kind) {
  switch (kind) {
    case SyntheticKind::ShiftedGaussians: return "shifted-gaussians";
    case SyntheticKind::RotatedMoons: return "rotated-moons";
  }
  return "unknown";
}

DomainPair generate_synthetic(SyntheticKind kind, int n_per_class, double shift,
                              std::uint64_t seed, int dim) {
  require(n_per_class >= 2, ErrorKind::InvalidArgument, "need at least 2 samples per class");
  std::mt19937_64 rng(seed);

  DomainPair pair;
  if (kind == SyntheticKind::ShiftedGaussians) {
    require(dim >= 1, ErrorKind::InvalidArgument, "dimension must be >= 1");
    const Vector zero = Vector::Zero(dim);
    Vector shifted = zero;
    shifted(dim >= 2 ? 1 : 0) += shift;
    pair.source = gaussian_block(rng, n_per_class, dim, zero);
    pair.target = gaussian_block(rng, n_per_class, dim, shifted);
  } else {
    pair.source = moons_block(rng, n_per_class, 0.0);
    pair.target = moons_block(rng, n_per_class, shift);
  }
  return pair;
}

}  // namespace adapt
