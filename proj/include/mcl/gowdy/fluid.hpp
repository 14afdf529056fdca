#pragma once

#include <utility>

namespace mcl::gowdy {

/// Primitive fluid variables: energy density mu > 0 and scalar velocity |v| < 1.
struct FluidState {
  double mu = 1.0;
  double v = 0.0;

  bool operator==(const FluidState&) const = default;
};

/// tau, S and the flux Sigma of the homogeneous system tau_t + S_x = 0,
/// S_t + Sigma_x = 0.
struct ConservedFluid {
  double tau = 0.0;
  double S = 0.0;
  double Sigma = 0.0;
};

/// Throws DomainError unless mu > 0 and |v| < 1.
void check_physical(const FluidState& f);

/// p = c_s^2 mu, xi^2 = 1/(1 - v^2), tau = (mu + p) xi^2 - p,
/// S = (mu + p) xi^2 v, Sigma = (mu + p) xi^2 v^2 + p.
ConservedFluid primitive_to_conserved(const FluidState& f, double c_s);

/// Inverse of primitive_to_conserved, admissible iff tau > 0 and |S| < tau.
/// Throws NumericalError on unphysical input.
FluidState conserved_to_primitive(double tau, double S, double c_s);

/// (lambda_-, lambda_+) = ((v - c_s)/(1 - v c_s), (v + c_s)/(1 + v c_s)).
std::pair<double, double> wave_speeds(const FluidState& f, double c_s);

inline double pressure(const FluidState& f, double c_s) noexcept { return c_s * c_s * f.mu; }

}  // namespace mcl::gowdy
