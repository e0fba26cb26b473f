#pragma once

#include <cstdint>
#include <string>

#include "adapt/types.hpp"

namespace adapt {

enum class SyntheticKind { ShiftedGaussians, RotatedMoons };

SyntheticKind parse_synthetic_kind(const std::string& text);
const char* to_string(SyntheticKind kind);

// Two-class source plus a distribution-shifted target, labels on both sides.
//
// shifted-gaussians: classes are unit Gaussians separated by 4 along the
// first axis; target samples are drawn from the same classes and then moved
// by `shift` along the second axis (the first when dim == 1).
//
// rotated-moons: the classic interleaved half-moons in 2-D (dim is ignored);
// target points are rotated by `shift` radians about the moons' centre.
DomainPair generate_synthetic(SyntheticKind kind, int n_per_class, double shift,
                              std::uint64_t seed, int dim = 5);

}  // namespace adapt
