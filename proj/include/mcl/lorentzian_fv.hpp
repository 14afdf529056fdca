#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mcl/flux_entropy.hpp"
#include "mcl/geometry.hpp"

namespace mcl {

/// 1+1 spacetime ds^2 = -N^2 dt^2 + gamma^2 dx^2 on [0, period) with periodic
/// x, presented by its slices t = const. N is the lapse and gamma the spatial
/// sqrt_g; both must stay strictly positive.
class Foliation1p1 {
 public:
  using Field = std::function<double(double t, double x)>;

  Foliation1p1(std::string name, Index n_cells, double period, Field lapse, Field spatial_sqrt_g);

  const std::string& name() const noexcept { return name_; }
  Index n_cells() const noexcept { return n_cells_; }
  double period() const noexcept { return period_; }
  double dx() const noexcept { return period_ / static_cast<double>(n_cells_); }
  double center(Index i) const noexcept { return (static_cast<double>(i) + 0.5) * dx(); }
  /// Edge e is the right face of cell e.
  double edge_position(Index e) const noexcept { return static_cast<double>(e + 1) * dx(); }

  double lapse(double t, Index i) const { return lapse_(t, center(i)); }
  double spatial_sqrt_g(double t, Index i) const { return gamma_(t, center(i)); }
  const Field& lapse_field() const noexcept { return lapse_; }
  const Field& spatial_sqrt_g_field() const noexcept { return gamma_; }

  /// Throws DomainError naming (t, cell) if N or gamma is not positive on the
  /// slice t.
  void check_slice(double t) const;

 private:
  std::string name_;
  Index n_cells_;
  double period_;
  Field lapse_;
  Field gamma_;
};

/// Built-in foliations: "minkowski" (N = gamma = 1), "lapse_wave"
/// (N = 1 + A sin(2 pi x/L) cos(omega t)), "expanding"
/// (N = 1 + A cos(2 pi x/L), gamma = exp(H t)).
Foliation1p1 make_foliation(const std::string& family, Index n_cells, double period, double amplitude = 0.2,
                            double omega = 1.0, double hubble = 0.2);

/// Space-time stream function chi(t, x) = A (L / 2 pi) sin(2 pi x / L) sin(omega t).
struct StreamCorrection {
  double amplitude = 0.0;
  double omega = 1.0;
};

/// Geometry-compatible flux on a foliation, given through its densitized
/// components sqrt|g| f = (D_t, D_x):
///
///   D_t(t, x, u) = (1 + d_x chi) phi_t(u),   D_x(t, x, u) = phi_x(u) - d_t chi phi_t(u),
///
/// so d_t D_t + d_x D_x = 0 for every u. Discretely the chi derivatives are
/// replaced by differences of chi between edges / time levels, which keeps the
/// compatibility exact on the grid. phi_t must be strictly increasing on the
/// declared state range (future orientation).
class TimelikeFlux {
 public:
  TimelikeFlux(std::string name, Potential density, Potential spatial, StreamCorrection chi, double state_min,
               double state_max);

  const std::string& name() const noexcept { return name_; }
  const Potential& density() const noexcept { return density_; }
  const Potential& spatial() const noexcept { return spatial_; }
  double state_min() const noexcept { return state_min_; }
  double state_max() const noexcept { return state_max_; }

  double chi(const Foliation1p1& fol, double t, double x) const noexcept;

  /// Contravariant components (f^t, f^x) at a cell center.
  Vec2 eval(const Foliation1p1& fol, double t, Index cell, double u) const;
  Vec2 deriv(const Foliation1p1& fol, double t, Index cell, double u) const;

  /// Discrete density factor m_i(t) with D_t,i = m_i phi_t(u).
  double density_factor(const Foliation1p1& fol, double t, Index cell) const noexcept;
  double conserved_density(const Foliation1p1& fol, double t, Index cell, double u) const noexcept;
  /// Recovers u from the conserved density on slice t (bisection to 1e-13,
  /// then Newton polish). Throws NumericalError if v lies outside the range.
  double invert_density(const Foliation1p1& fol, double t, Index cell, double v) const;

  /// Time-averaged d_t chi over [t0, t1] at edge e.
  double edge_chi_rate(const Foliation1p1& fol, double t0, double t1, Index e) const noexcept;
  /// Upper bound of |d_t chi| used when choosing the time step.
  double chi_rate_bound(const Foliation1p1& fol) const noexcept;

 private:
  std::string name_;
  Potential density_;
  Potential spatial_;
  StreamCorrection chi_;
  double state_min_;
  double state_max_;
};

/// Built-in flux families with phi_t(u) = u: "transport" (phi_x = s u) and
/// "burgers" (phi_x = s u^2 / 2).
TimelikeFlux make_timelike_flux(const std::string& family, double speed, StreamCorrection chi, double state_min,
                                double state_max);

struct TimelikeSample {
  double t;
  Index cell;
  double u;
};

struct TimelikeReport {
  /// max over samples of g(d_u f, d_u f); < 0 means time-like everywhere.
  double max_norm = 0.0;
  /// min over samples of d_u f^t; > 0 means future oriented.
  double min_time_component = 0.0;
  bool timelike() const noexcept { return max_norm < 0.0 && min_time_component > 0.0; }
};

TimelikeReport check_timelike(const TimelikeFlux& flux, const Foliation1p1& fol,
                              const std::vector<TimelikeSample>& samples);

/// Regular (t, cell, u) sample grid over [0, t_end] and the declared range.
std::vector<TimelikeSample> timelike_sample_grid(const TimelikeFlux& flux, const Foliation1p1& fol, double t_end,
                                                 Index n_times = 9, Index n_states = 9);

struct LorentzConfig {
  double cfl = 0.45;
  double t_end = 0.0;
  std::size_t record_every = 1;

  void validate() const;
};

/// Slices H_t recorded by evolve: times[k] with the cell states u on it.
struct LorentzRun {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::size_t steps = 0;
};

/// Finite-volume evolution of v_i = D_t,i(u_i) with Rusanov fluxes of D_x;
/// u is recovered after each step by inverting v on the new slice.
LorentzRun evolve(const std::vector<double>& u0, const TimelikeFlux& flux, const Foliation1p1& fol,
                  const LorentzConfig& cfg);

/// Two evolutions sharing one time grid (smaller CFL step of the two).
std::pair<LorentzRun, LorentzRun> evolve_pair(const std::vector<double>& u0, const std::vector<double>& v0,
                                              const TimelikeFlux& flux, const Foliation1p1& fol,
                                              const LorentzConfig& cfg);

/// Convex entropy for trace norms. Kruzkov entropies use the closed form
/// normalized to vanish at u = k; other entropies integrate from 0.
struct SliceEntropy {
  std::string name;
  bool kruzkov = false;
  double k = 0.0;
  ConvexEntropy entropy;

  static SliceEntropy quadratic();
  static SliceEntropy kruzkov_at(double k);
};

/// sum_i dx |F^t_i| with F^t the normal (densitized) entropy flux component.
double trace_entropy_norm(const std::vector<double>& u, const SliceEntropy& entropy, const TimelikeFlux& flux,
                          const Foliation1p1& fol, double t);

/// sum_i dx |D_t,i(u_i) - D_t,i(v_i)|.
double l1_flux_distance(const std::vector<double>& u, const std::vector<double>& v, const TimelikeFlux& flux,
                        const Foliation1p1& fol, double t);

/// Conserved slice integral sum_i dx D_t,i(u_i).
double slice_mass(const std::vector<double>& u, const TimelikeFlux& flux, const Foliation1p1& fol, double t);

}  // namespace mcl
