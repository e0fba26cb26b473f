#include "adapt/trust_region.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace adapt {

namespace {

Matrix symmetrized(const Matrix& a) { return 0.5 * (a + a.transpose()); }

// Positive root of |w + tau*d|_F = radius.
double boundary_tau(const Matrix& w, const Matrix& d, double radius) {
  const double a = d.squaredNorm();
  const double b = 2.0 * w.cwiseProduct(d).sum();
  const double c = w.squaredNorm() - radius * radius;
  const double disc = std::max(0.0, b * b - 4.0 * a * c);
  return (-b + std::sqrt(disc)) / (2.0 * a);
}

}  // namespace

const char* to_string(TrStop stop) {
  switch (stop) {
    case TrStop::ObjectiveChange: return "objective_change";
    case TrStop::GradientNorm: return "gradient_norm";
    case TrStop::MaxOuter: return "max_outer";
    case TrStop::RadiusCollapse: return "radius_collapse";
  }
  return "unknown";
}

std::string TrTrace::to_json_lines() const {
  std::string out;
  for (const TrIteration& it : iterations) {
    nlohmann::ordered_json line;
    line["iter"] = it.index;
    line["objective"] = it.objective;
    line["grad_norm"] = it.grad_norm;
    line["radius"] = it.radius;
    line["accepted"] = it.accepted;
    line["inner"] = it.inner_iterations;
    out += line.dump();
    out += '\n';
  }
  nlohmann::ordered_json tail;
  tail["stop"] = to_string(stop);
  tail["accepted_steps"] = accepted_steps;
  out += tail.dump();
  out += '\n';
  return out;
}

TcgResult tcg_subproblem(const TangentMatrix& grad, const HvpFn& hvp, double radius,
                         const SpdPoint& m, const TrSettings& settings) {
  require(radius > 0.0, ErrorKind::InvalidArgument, "trust radius must be positive");
  const Eigen::Index n = m.dim();
  const int dim = static_cast<int>(n * (n + 1) / 2);
  const int cg_max = settings.cg_max > 0 ? settings.cg_max : dim;

  // Congruence by M^(+-1/2) turns the affine-invariant inner products into
  // Frobenius ones, so plain CG recurrences apply below.
  const Matrix s = m.sqrt();
  const Matrix si = m.inv_sqrt();
  const auto to_ambient = [&](const Matrix& w) { return TangentMatrix(s * w * s); };
  const auto apply_h = [&](const Matrix& w) -> Matrix {
    const Matrix hw = hvp(to_ambient(w)).xi();
    return symmetrized(si * hw * si);
  };

  TcgResult result;
  Matrix g = symmetrized(si * grad.xi() * si);
  Matrix w = Matrix::Zero(n, n);
  Matrix r = g;
  Matrix d = -r;
  double r2 = r.squaredNorm();
  const double r0_norm = std::sqrt(r2);
  if (r0_norm == 0.0) {
    result.step = TangentMatrix::zero(n);
    return result;
  }

  for (int i = 0; i < cg_max; ++i) {
    ++result.iterations;
    const Matrix hd = apply_h(d);
    const double dhd = d.cwiseProduct(hd).sum();
    if (dhd <= 0.0) {
      result.negative_curvature = true;
      result.hit_boundary = true;
      w += boundary_tau(w, d, radius) * d;
      break;
    }
    const double alpha = r2 / dhd;
    const Matrix w_next = w + alpha * d;
    if (w_next.norm() >= radius) {
      result.hit_boundary = true;
      w += boundary_tau(w, d, radius) * d;
      break;
    }
    w = w_next;
    r += alpha * hd;
    const double r2_next = r.squaredNorm();
    if (std::sqrt(r2_next) <= settings.cg_tol * r0_norm) break;
    d = -r + (r2_next / r2) * d;
    r2 = r2_next;
  }

  // Guard against rounding pushing the boundary point fractionally outside.
  const double w_norm = w.norm();
  if (w_norm > radius * (1.0 + 1e-12)) w *= radius / w_norm;
  result.step = to_ambient(w);
  return result;
}

TrResult tr_minimize(const TrProblem& problem, const SpdPoint& m0, const TrSettings& settings) {
  require(static_cast<bool>(problem.objective) && static_cast<bool>(problem.euclidean_gradient),
          ErrorKind::InvalidArgument, "problem callbacks must be set");
  require(settings.tol > 0.0 && settings.max_outer >= 1, ErrorKind::InvalidArgument,
          "tol must be positive and max_outer >= 1");

  const RgradFn rgrad_at = [&](const SpdPoint& p) {
    return egrad_to_rgrad(p, problem.euclidean_gradient(p));
  };

  SpdPoint point = m0;
  double value = problem.objective(point);
  require(std::isfinite(value), ErrorKind::NonFiniteObjective,
          "objective is not finite at the initial point");

  const double delta0 =
      settings.initial_radius > 0.0 ? settings.initial_radius : 0.1 * m0.m().norm();
  const double delta_max =
      settings.max_radius > 0.0 ? settings.max_radius : 1e4 * delta0;
  double delta = delta0;

  TrTrace trace;
  trace.stop = TrStop::MaxOuter;

  for (int k = 0; k < settings.max_outer; ++k) {
    const TangentMatrix grad = rgrad_at(point);
    const double grad_norm = metric_norm(point, grad);
    require(std::isfinite(grad_norm), ErrorKind::NonFiniteObjective,
            "gradient is not finite at the current iterate");

    TrIteration record;
    record.index = k;
    record.objective = value;
    record.grad_norm = grad_norm;
    record.radius = delta;

    if (grad_norm < settings.grad_tol_scale * (1.0 + std::abs(value))) {
      trace.iterations.push_back(record);
      trace.stop = TrStop::GradientNorm;
      break;
    }

    const double h = settings.fd_step_scale * (1.0 + point.m().norm());
    const HvpFn hvp = [&](const TangentMatrix& xi) {
      return directional_rgrad_diff(rgrad_at, point, xi, h);
    };

    const TcgResult sub = tcg_subproblem(grad, hvp, delta, point, settings);
    record.inner_iterations = sub.iterations;
    const TangentMatrix& step = sub.step;

    const double model_decrease =
        -(metric_inner(point, grad, step) + 0.5 * metric_inner(point, hvp(step), step));

    bool rejected = true;
    double rho = 0.0;
    if (model_decrease > 1e-15 * (1.0 + std::abs(value))) {
      bool step_valid = true;
      double trial_value = 0.0;
      SpdPoint trial = point;
      try {
        trial = settings.exact_retraction ? retract_exact(point, step) : retract(point, step);
        trial_value = problem.objective(trial);
        if (!std::isfinite(trial_value)) step_valid = false;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::StepTooLarge && e.kind() != ErrorKind::SingularPoint) throw;
        step_valid = false;
      }
      if (step_valid) {
        rho = (value - trial_value) / model_decrease;  // NaN objective rejects below
        const bool on_boundary = metric_norm(point, step) >= 0.99 * delta;
        if (rho < 0.25) {
          delta *= 0.25;
        } else if (rho > 0.75 && on_boundary) {
          delta = std::min(2.0 * delta, delta_max);
        }
        if (rho >= settings.rho_accept && trial_value < value) {
          const double change = std::abs(value - trial_value);
          point = trial;
          value = trial_value;
          rejected = false;
          record.accepted = true;
          ++trace.accepted_steps;
          trace.iterations.push_back(record);
          if (change < settings.tol) {
            trace.stop = TrStop::ObjectiveChange;
            break;
          }
          continue;
        }
      } else {
        delta *= 0.25;
      }
    } else {
      delta *= 0.25;
    }

    if (rejected) {
      trace.iterations.push_back(record);
      if (delta < 1e-14 * (1.0 + point.m().norm())) {
        trace.stop = TrStop::RadiusCollapse;
        break;
      }
    }
  }

  return TrResult{point, std::move(trace)};
}

}  // namespace adapt
