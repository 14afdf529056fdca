#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "mcl/gowdy/fluid.hpp"

namespace mcl::gowdy {

/// Polarized Gowdy metric ds^2 = e^{2a}(-dt^2 + dx^2) + e^{2b}(e^{2c} dy^2 + e^{-2c} dz^2)
/// sampled at x_i = i dx on a periodic grid, together with its first
/// derivatives. a0 and beta0 are the reconstruction anchors at x = 0.
struct GeometryState {
  std::vector<double> a, b, c;
  std::vector<double> at, ax, bt, bx, ct, cx;
  double a0 = 0.0;
  double beta0 = 1.0;

  static GeometryState flat(std::size_t n);
  std::size_t size() const noexcept { return a.size(); }

  double alpha(std::size_t i) const;
  double beta(std::size_t i) const;
  double beta_t(std::size_t i) const;
  double beta_x(std::size_t i) const;
};

/// Per-cell tau, Sigma and p entering the Einstein equations.
struct MatterTerms {
  std::vector<double> tau, Sigma, p;

  static MatterTerms vacuum(std::size_t n);
  static MatterTerms from_fluid(const std::vector<FluidState>& fluid, double c_s);
};

/// Extra right-hand side (F_a, F_b, F_c) added to the three wave equations.
using GeometryForcing = std::function<std::array<double, 3>(double t, double x)>;

/// One SSP-RK3 step of the first-order form of
///   a_tt - a_xx = b_t^2 - b_x^2 - c_t^2 + c_x^2 + (kappa/2) e^{2a} (-tau + Sigma - 2p)
///   b_tt - b_xx = -2 b_t^2 + 2 b_x^2 + (kappa/2) e^{2a} (tau - Sigma)
///   c_tt - c_xx = -2 b_t c_t + 2 b_x c_x
/// with centred spatial differences and matter frozen over the step.
/// Requires dt <= dx.
GeometryState geometry_step(const GeometryState& geo, const MatterTerms& matter, double dt, double dx, double kappa,
                            double t = 0.0, const GeometryForcing& forcing = {});

struct MetricFields {
  std::vector<double> a, alpha, b, beta;
};

/// a = a0 + int_0^x a_x, beta = beta0 + int_0^x beta_x by the cumulative
/// trapezoid rule; alpha = e^{2a}, b = ln(beta)/2 (NaN where beta <= 0).
MetricFields reconstruct_metric(const GeometryState& geo, double dx);

struct ConstraintResidual {
  std::vector<double> r1, r2;

  double max_abs_r1() const;
  double max_abs_r2() const;
};

/// r1 = 2 a_t b_t + 2 a_x b_x + b_t^2 - 2 b_xx - 3 b_x^2 - c_t^2 - c_x^2 - kappa e^{2a} tau
/// r2 = -2 a_t b_x - 2 a_x b_t + 2 b_tx + 2 b_t b_x + 2 c_t c_x - kappa e^{2a} S
/// with b_xx, b_tx centred differences of the carried b_x, b_t. An empty
/// fluid vector means vacuum.
ConstraintResidual constraint_residual(const GeometryState& geo, const std::vector<FluidState>& fluid, double dx,
                                       double kappa, double c_s);

}  // namespace mcl::gowdy
