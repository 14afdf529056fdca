#include "mcl/gowdy/fluid.hpp"

#include <cmath>

#include <fmt/format.h>

#include "mcl/error.hpp"

namespace mcl::gowdy {

void check_physical(const FluidState& f) {
  if (!(f.mu > 0.0) || !std::isfinite(f.mu))
    throw DomainError(fmt::format("fluid state: energy density must be positive, got mu = {}", f.mu));
  if (!(std::abs(f.v) < 1.0)) throw DomainError(fmt::format("fluid state: causality requires |v| < 1, got v = {}", f.v));
}

namespace {

void check_sound_speed(double c_s) {
  if (!(c_s > 0.0 && c_s < 1.0)) throw DomainError(fmt::format("sound speed must satisfy 0<c_s<1, got {}", c_s));
}

}  // namespace

ConservedFluid primitive_to_conserved(const FluidState& f, double c_s) {
  check_physical(f);
  check_sound_speed(c_s);
  const double p = c_s * c_s * f.mu;
  const double h = (f.mu + p) / (1.0 - f.v * f.v);
  return {h - p, h * f.v, h * f.v * f.v + p};
}

FluidState conserved_to_primitive(double tau, double S, double c_s) {
  check_sound_speed(c_s);
  if (!(tau > 0.0) || !std::isfinite(tau) || !std::isfinite(S) || !(std::abs(S) < tau))
    throw NumericalError(
        fmt::format("conserved_to_primitive: unphysical state tau = {}, S = {} (need tau > 0, |S| < tau)", tau, S));
  // S / tau = (1 + c^2) v / (1 + c^2 v^2); the root in (-1, 1) of
  // c^2 r v^2 - (1 + c^2) v + r = 0, written in cancellation-free form.
  const double c2 = c_s * c_s;
  const double r = S / tau;
  const double q = 1.0 + c2;
  const double v = 2.0 * r / (q + std::sqrt(q * q - 4.0 * c2 * r * r));
  const double xi2 = 1.0 / (1.0 - v * v);
  const double mu = tau / (q * xi2 - c2);
  if (!(mu > 0.0) || !(std::abs(v) < 1.0) || !std::isfinite(mu))
    throw NumericalError(fmt::format("conserved_to_primitive: recovery failed for tau = {}, S = {}", tau, S));
  return {mu, v};
}

std::pair<double, double> wave_speeds(const FluidState& f, double c_s) {
  check_physical(f);
  check_sound_speed(c_s);
  return {(f.v - c_s) / (1.0 - f.v * c_s), (f.v + c_s) / (1.0 + f.v * c_s)};
}

}  // namespace mcl::gowdy
