#pragma once

#include <functional>
#include <string>
#include <vector>

#include "adapt/spd.hpp"

namespace adapt {

// Smooth objective over SPD matrices, described by its value and Euclidean
// gradient; the Riemannian gradient and the finite-difference Hessian action
// are derived internally.
struct TrProblem {
  std::function<double(const SpdPoint&)> objective;
  std::function<Matrix(const SpdPoint&)> euclidean_gradient;
  Eigen::Index dim = 0;
};

struct TrSettings {
  // Stop once the absolute objective change between consecutive accepted
  // iterates falls below tol.
  double tol = 1e-2;
  int max_outer = 200;
  // Negative values select 0.1 * |M0|_F and 1e4 * initial_radius.
  double initial_radius = -1.0;
  double max_radius = -1.0;
  double rho_accept = 0.1;
  // Negative selects the manifold dimension H*(H+1)/2.
  int cg_max = -1;
  double cg_tol = 1e-8;
  bool exact_retraction = false;
  // Gradient-norm stop: |rgrad|_M < grad_tol_scale * (1 + |obj|).
  double grad_tol_scale = 1e-9;
  // Finite-difference step h = fd_step_scale * (1 + |M|_F).
  double fd_step_scale = 1e-6;
};

enum class TrStop { ObjectiveChange, GradientNorm, MaxOuter, RadiusCollapse };

const char* to_string(TrStop stop);

struct TrIteration {
  int index = 0;
  double objective = 0.0;
  double grad_norm = 0.0;
  double radius = 0.0;
  bool accepted = false;
  int inner_iterations = 0;
};

struct TrTrace {
  std::vector<TrIteration> iterations;
  TrStop stop = TrStop::MaxOuter;
  int accepted_steps = 0;

  // One compact JSON object per iteration, then a closing status line.
  std::string to_json_lines() const;
};

struct TrResult {
  SpdPoint minimizer;
  TrTrace trace;
};

struct TcgResult {
  TangentMatrix step;
  int iterations = 0;
  bool hit_boundary = false;
  bool negative_curvature = false;
};

using HvpFn = std::function<TangentMatrix(const TangentMatrix&)>;

// Steihaug-Toint truncated conjugate gradient on the trust-region model
//   m(xi) = <grad, xi>_M + 0.5 * <hvp(xi), xi>_M,
// run in coordinates where the affine-invariant metric is Euclidean.
// Stops at the boundary on negative curvature or radius violation; the
// returned step never exceeds the radius (up to 1e-12 relative slack) and
// never increases the model.
TcgResult tcg_subproblem(const TangentMatrix& grad, const HvpFn& hvp, double radius,
                         const SpdPoint& m, const TrSettings& settings);

// Riemannian trust-region descent. Every accepted step strictly decreases
// the objective; the trace records one entry per outer iteration.
TrResult tr_minimize(const TrProblem& problem, const SpdPoint& m0, const TrSettings& settings);

}  // namespace adapt
