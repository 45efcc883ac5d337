#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "brf/brf_solver.hpp"
#include "brf/curvature.hpp"
#include "brf/homogeneous.hpp"

namespace brf {

/// Everything needed to evaluate the diagonal-family flow on one space: the
/// closed-form constants, the scalar Casimir eigenvalues, and the oracle
/// geometry used to re-validate harmonicity of the frozen torsion form.
struct FlowContext {
  AdaptedFrame<double> fr;
  double kappa1 = 0, kappa2 = 0, lambda = 0;
  ReductiveGeometry<double> geo;
  ThreeTensor<double> hq = ThreeTensor<double>(0);
};

/// Builds the flow context; spaces whose isotropy Casimirs are not scalar or
/// whose ideal eigenvalues differ cannot stay inside the three-parameter
/// diagonal family and are rejected.
inline FlowContext flow_context(const AlignedSpace<double>& sp, double z1) {
  const auto sd = scalar_data(sp);
  const auto ctx = closed_form_context(sp, z1);
  const auto deviation = [](const Mat<double>& cas, double kappa) {
    return max_abs<double>(
        Mat<double>(cas - kappa * Mat<double>::Identity(cas.rows(), cas.cols())));
  };
  if (deviation(ctx.cas1_frame, sd.kappa1) > 1e-8 ||
      deviation(ctx.cas2_frame, sd.kappa2) > 1e-8)
    throw UnsupportedSpaceError(sp.name() +
                                ": isotropy Casimir deviates from a scalar");
  FlowContext fc;
  fc.fr = ctx.fr;
  fc.kappa1 = sd.kappa1;
  fc.kappa2 = sd.kappa2;
  fc.lambda = sd.lambda;
  fc.geo = reductive_geometry(sp, ctx.fr);
  fc.hq = hq_tensor(sp, ctx.fr);
  return fc;
}

/// Right-hand side of the flow restricted to diagonal metrics, per block:
/// dx_i = scalar of -2 ricci(g) + 1/2 (h_scale H)^2_g on p_i in g_b units.
/// The torsion form stays frozen at h_scale times the background form.
inline std::array<double, 3> flow_rhs(const FlowContext& fc,
                                      const std::array<double, 3>& x,
                                      double h_scale = 1.0) {
  const DiagonalMetric<double> m{x[0], x[1], x[2]};
  const std::vector<double> lambdas = {fc.lambda};
  const auto rc = ricci_coefficients(fc.fr.cst, lambdas, m);
  const auto hc =
      h_squared_coefficients(fc.fr.cst, lambdas, m, TorsionFormula::corrected);
  const double s2 = h_scale * h_scale;
  return {-2 * m.x1 * (rc.id1 + rc.cs1 * fc.kappa1) +
              0.5 * s2 * (hc.id1 + hc.cs1 * fc.kappa1),
          -2 * m.x2 * (rc.id2 + rc.cs2 * fc.kappa2) +
              0.5 * s2 * (hc.id2 + hc.cs2 * fc.kappa2),
          -2 * m.x3 * rc.r3[0] + 0.5 * s2 * hc.h3[0]};
}

enum class FlowStatus { reached_t_end, equilibrium, positivity_loss, blow_up };

struct FlowPoint {
  double t = 0;
  std::array<double, 3> x{};
  double rhs_norm = 0;
  double codiff_residual = 0;
};

struct FlowResult {
  std::vector<FlowPoint> points;
  FlowStatus status = FlowStatus::reached_t_end;
};

namespace detail {

inline std::array<double, 3> rk4_step(const FlowContext& fc,
                                      const std::array<double, 3>& x, double h,
                                      double h_scale) {
  const auto add = [](const std::array<double, 3>& a, double s,
                      const std::array<double, 3>& b) {
    return std::array<double, 3>{a[0] + s * b[0], a[1] + s * b[1],
                                 a[2] + s * b[2]};
  };
  const auto k1 = flow_rhs(fc, x, h_scale);
  const auto k2 = flow_rhs(fc, add(x, h / 2, k1), h_scale);
  const auto k3 = flow_rhs(fc, add(x, h / 2, k2), h_scale);
  const auto k4 = flow_rhs(fc, add(x, h, k3), h_scale);
  std::array<double, 3> out;
  for (int i = 0; i < 3; ++i)
    out[i] = x[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return out;
}

inline double inf_norm(const std::array<double, 3>& v) {
  return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

}  // namespace detail

/// Harmonicity residual of the frozen torsion form at the metric x.
inline double frozen_torsion_residual(const FlowContext& fc,
                                      const std::array<double, 3>& x) {
  const Vec<double> coeffs = metric_coefficients(fc.fr, x[0], x[1], x[2]);
  return max_abs<double>(codifferential(fc.geo, fc.hq, coeffs));
}

/// Adaptive RK4 (step doubling) integration of the diagonal flow.  At every
/// accepted step the codifferential of the frozen form is re-validated, so
/// freezing the torsion is continuously justified along the trajectory.
inline FlowResult integrate(const FlowContext& fc, const std::array<double, 3>& x0,
                            double t_end, double tol = 1e-8,
                            double h_scale = 1.0) {
  if (x0[0] <= 0 || x0[1] <= 0 || x0[2] <= 0)
    throw ParameterError("integrate: initial metric must be positive");
  FlowResult res;
  std::array<double, 3> x = x0;
  double t = 0;
  const auto record = [&](FlowStatus /*unused*/) {
    FlowPoint p;
    p.t = t;
    p.x = x;
    p.rhs_norm = detail::inf_norm(flow_rhs(fc, x, h_scale));
    p.codiff_residual = frozen_torsion_residual(fc, x);
    if (p.codiff_residual > 1e-8)
      throw VerificationError("integrate: frozen torsion stopped being harmonic");
    res.points.push_back(p);
  };
  record(res.status);
  double h = std::min(t_end / 16, 0.05);
  for (int accepted = 0; accepted < 100000 && t < t_end - 1e-14; ++accepted) {
    if (res.points.back().rhs_norm < 1e-12) {
      res.status = FlowStatus::equilibrium;
      return res;
    }
    h = std::min(h, t_end - t);
    std::array<double, 3> next;
    double err = 0;
    while (true) {
      const auto full = detail::rk4_step(fc, x, h, h_scale);
      const auto half = detail::rk4_step(
          fc, detail::rk4_step(fc, x, h / 2, h_scale), h / 2, h_scale);
      err = std::max({std::abs(full[0] - half[0]), std::abs(full[1] - half[1]),
                      std::abs(full[2] - half[2])}) /
            15.0;
      if (err <= tol) {
        next = half;
        break;
      }
      h /= 2;
      if (h < 1e-12) throw NumericalError("integrate: step size underflow");
    }
    t += h;
    x = next;
    if (x[0] <= 0 || x[1] <= 0 || x[2] <= 0) {
      res.status = FlowStatus::positivity_loss;
      return res;
    }
    if (detail::inf_norm(x) > 1e6) {
      res.status = FlowStatus::blow_up;
      return res;
    }
    record(res.status);
    const double grow = 0.9 * std::pow(tol / std::max(err, 1e-16), 0.2);
    h *= std::min(2.0, std::max(0.5, grow));
  }
  res.status = FlowStatus::reached_t_end;
  return res;
}

/// Plain fixed-step RK4 used by the convergence-order test.
inline std::array<double, 3> fixed_step_rk4(const FlowContext& fc,
                                            const std::array<double, 3>& x0,
                                            double t_end, int n_steps,
                                            double h_scale = 1.0) {
  std::array<double, 3> x = x0;
  const double h = t_end / n_steps;
  for (int i = 0; i < n_steps; ++i) {
    x = detail::rk4_step(fc, x, h, h_scale);
    if (x[0] <= 0 || x[1] <= 0 || x[2] <= 0)
      throw NumericalError("fixed_step_rk4: positivity lost");
  }
  return x;
}

}  // namespace brf
