#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "mcl/flux_entropy.hpp"
#include "mcl/geometry.hpp"

namespace mcl {

enum class NumericalFlux { rusanov, godunov_scalar };

NumericalFlux parse_numerical_flux(std::string_view name);
std::string_view to_string(NumericalFlux flux) noexcept;

struct FvConfig {
  double cfl = 0.45;
  double t_end = 0.0;
  NumericalFlux numerical_flux = NumericalFlux::rusanov;
  std::size_t record_every = 1;

  /// Throws DomainError on cfl outside (0, 1], negative t_end or record_every == 0.
  void validate() const;
};

/// Volume-weighted discrete norms of a cell field.
struct NormSample {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  double mass = 0.0;
};

NormSample measure_norms(const CellComplex& mesh, std::span<const double> u);

struct NormSeries {
  std::vector<double> times;
  std::vector<double> l1;
  std::vector<double> l2;
  std::vector<double> linf;
  std::vector<double> mass;

  void append(double t, const NormSample& s);
  std::size_t size() const noexcept { return times.size(); }
};

/// Numerical flux through edge e for left/right states. Rusanov uses the
/// maximal |dF_e/du| over [min(uL,uR), max(uL,uR)] as dissipation speed.
double numerical_edge_flux(const FluxField& flux, NumericalFlux scheme, Index e, double u_left, double u_right);

/// Stability number max_i dt sum_{e in cell i} a_e / (2 V_i); the update is
/// monotone for values <= 1 on geometry-compatible fluxes (<= 1/2 in general).
double cfl_number(const CellComplex& mesh, const FluxField& flux, std::span<const double> u, double dt);

/// Largest dt with cfl_number == 1, or +inf when every edge speed vanishes.
double max_stable_dt(const CellComplex& mesh, const FluxField& flux, std::span<const double> u);

/// One explicit finite-volume step. Throws CflError when cfl_number > 1.
CellField step(const CellComplex& mesh, const CellField& u, const FluxField& flux, double dt,
               NumericalFlux scheme = NumericalFlux::rusanov);

using StepObserver = std::function<void(std::size_t step, double t, const CellField& u)>;

struct SolveResult {
  CellField u;
  NormSeries norms;
  std::size_t steps = 0;
  double t = 0.0;
};

/// Repeated step() with dt = cfl * max_stable_dt until t_end. Norms (and the
/// optional observer) are recorded at step 0, every record_every steps and at
/// the final step.
SolveResult solve(const CellComplex& mesh, const CellField& u0, const FluxField& flux, const FvConfig& cfg,
                  const StepObserver& observer = {});

struct ContractionSeries {
  std::vector<double> times;
  std::vector<double> distance;
};

/// Advances u and v with a shared time step (the smaller of the two CFL
/// steps) and records ||u - v||_{L1(dV_g)} after each step.
ContractionSeries contraction_harness(const CellComplex& mesh, const CellField& u0, const CellField& v0,
                                      const FluxField& flux, const FvConfig& cfg);

/// Per-cell residual of the discrete Kruzkov entropy inequality
///   (|u_after - k| - |u_before - k|)/dt + (1/V_i) sum_e +-G_e,
/// with the numerical entropy flux consistent with the scheme.
std::vector<double> entropy_residual(const CellComplex& mesh, const CellField& u_before, const CellField& u_after,
                                     const FluxField& flux, double dt, double k,
                                     NumericalFlux scheme = NumericalFlux::rusanov);

}  // namespace mcl
