#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "mcl/gowdy/fluid.hpp"
#include "mcl/gowdy/geometry.hpp"

namespace mcl::gowdy {

enum class Splitting { lie, strang };

Splitting parse_splitting(std::string_view name);
std::string_view to_string(Splitting s) noexcept;

struct BlowupThresholds {
  double alpha_b_ceiling = 1e6;  // sup|alpha| + sup|b|
  double mu_ceiling = 1e6;
  double beta_floor = 1e-10;
};

struct GowdyConfig {
  double kappa = 1.0;
  double c_s = 0.5;
  std::size_t n_cells = 128;
  double length = 6.283185307179586;
  double cfl = 0.45;
  double t_end = 0.0;
  unsigned vdc_base = 2;
  Splitting splitting = Splitting::lie;
  std::size_t record_every = 1;
  BlowupThresholds thresholds;

  double dx() const noexcept { return length / static_cast<double>(n_cells); }
  /// Throws DomainError naming the violated condition.
  void validate() const;
};

/// Euler source terms (T1, T2) of tau_t + S_x = T1, S_t + Sigma_x = T2 for the
/// polarized Gowdy metric:
///   T1 = -(a_t + 2 b_t) tau - 2 (a_x + b_x) S - a_t Sigma - 2 b_t p
///   T2 = -a_x tau - 2 (a_t + b_t) S - (a_x + 2 b_x) Sigma + 2 b_x p
std::array<double, 2> euler_sources(double at, double ax, double bt, double bx, const ConservedFluid& q, double p);

/// Extra (F_tau, F_S) added to the Euler sources.
using FluidForcing = std::function<std::array<double, 2>(double t, double x)>;

/// Explicit midpoint step of tau_t = T1, S_t = T2 with the geometry frozen.
/// Cells whose conserved update rounds to nothing keep their primitive state
/// bit-for-bit.
/// Throws NumericalError if a cell leaves the physical region.
std::vector<FluidState> fluid_source_step(const std::vector<FluidState>& fluid, const GeometryState& geo, double dt,
                                          double dx, double c_s, double t = 0.0, const FluidForcing& forcing = {});

/// Periodic total variation sum_i |f_{i+1} - f_i| including the wrap.
double tv_norm(const std::vector<double>& field);

enum class Verdict { running, geometry_blowup, matter_blowup, completed };
std::string_view to_string(Verdict v) noexcept;

struct SeriesRow {
  double t = 0.0;
  double tv_mu = 0.0;
  double tv_v = 0.0;
  double tv_w = 0.0;  // sum of the TV of (a_t, a_x, beta_t, beta_x, c_t, c_x)
  double sup_alpha_b = 0.0;
  double sup_mu = 0.0;
  double max_r1 = 0.0;
  double max_r2 = 0.0;
  double min_beta = 0.0;
  Verdict verdict = Verdict::running;
};

/// Classifies a state: geometry_blowup if reconstructed beta falls to the
/// floor, sup|alpha| + sup|b| exceeds its ceiling or fields are not finite;
/// matter_blowup if sup mu exceeds its ceiling; running otherwise.
Verdict blowup_monitor(const GeometryState& geo, const std::vector<FluidState>& fluid, double dx,
                       const BlowupThresholds& thresholds);

/// Diagnostics of one state (verdict left as running).
SeriesRow measure(double t, const GeometryState& geo, const std::vector<FluidState>& fluid, const GowdyConfig& cfg);

struct GowdyData {
  GeometryState geo;
  std::vector<FluidState> fluid;
};

/// Constraint-compatible data with homogeneous fluid at rest and b_x = 0:
///   b = b0 + 0 x, b_t = bt0 (nonzero), c = eps cos(x), c_t = ct0,
///   a_x = c_t c_x / b_t (a by Gauss-Kronrod quadrature from a0),
///   a_t = (kappa e^{2a} mu + c_t^2 + c_x^2 - b_t^2) / (2 b_t).
/// A period other than 2 pi rescales the cosine to stay periodic.
struct CompatibleFamily {
  double mu = 1.0;
  double bt0 = 0.5;
  double ct0 = 0.1;
  double eps = 0.1;
  double a0 = 0.0;
  double b0 = 0.0;
};
GowdyData constraint_compatible_data(const CompatibleFamily& family, const GowdyConfig& cfg);

/// Two fluid states joined at x = L/2 (and by periodicity at x = 0) on flat
/// vacuum geometry.
GowdyData riemann_data(const FluidState& left, const FluidState& right, const GowdyConfig& cfg);

struct ManufacturedForcing {
  GeometryForcing geometry;
  FluidForcing fluid;
};

/// One operator-split step glimm -> source -> geometry (Lie) or the
/// symmetric Strang variant. step_index (>= 1) selects the sampling point.
GowdyData split_step(const GowdyData& state, double t, double dt, std::uint64_t step_index, const GowdyConfig& cfg,
                     const ManufacturedForcing& forcing = {});

struct GowdyResult {
  GowdyData state;
  double t = 0.0;
  std::size_t steps = 0;
  std::vector<SeriesRow> series;
  Verdict verdict = Verdict::running;
  std::string message;
};

using GowdyObserver = std::function<void(std::size_t step, double t, const GowdyData&)>;

/// Runs to t_end with dt = cfl dx or until a blow-up verdict. Failure of
/// primitive recovery or of a Riemann solve is classified as matter_blowup.
GowdyResult run_gowdy(const GowdyData& initial, const GowdyConfig& cfg, const GowdyObserver& observer = {});

}  // namespace mcl::gowdy
