#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "adapt/mmd.hpp"
#include "adapt/trust_region.hpp"

namespace adapt {

// Inputs for learning the quadratic kernel weights: the objective is
//   v' M v + mu * |M|_F^2   with   v = Phi * gamma
// minimized over SPD matrices M. eta scales only the final kernel, not the
// objective.
struct LearnerInputs {
  DomainPair pair;
  AnchorSet anchors;
  KernelSpec base;
  KernelSpec beta;
  double eta = 1.0;
  double mu = 5e4;
  TrSettings tr_settings;
  std::uint64_t seed = 0;
};

struct LearnedKernel {
  Pdqk pdqk;
  TrTrace diagnostics;
  // Learnable MMD share eta * v' M v at the initial and final M.
  double mmd_before = 0.0;
  double mmd_after = 0.0;

  std::string to_json() const;
  static LearnedKernel from_json(const std::string& text);
};

double learn_objective(const SpdPoint& m, const Eigen::Ref<const Vector>& v, double mu);

Matrix learn_objective_gradient(const SpdPoint& m, const Eigen::Ref<const Vector>& v,
                                double mu);

// Random SPD start A*A' + 1e-3*I with A i.i.d. standard normal.
Matrix initial_spd(Eigen::Index dim, std::uint64_t seed);

LearnedKernel learn(const LearnerInputs& inputs);

// Plain callable evaluating the learned kernel on feature vectors.
std::function<double(const Vector&, const Vector&)> final_kernel_closure(
    const LearnedKernel& learned);

}  // namespace adapt
