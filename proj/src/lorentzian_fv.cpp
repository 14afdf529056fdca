#include "mcl/lorentzian_fv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "mcl/error.hpp"

namespace mcl {

Foliation1p1::Foliation1p1(std::string name, Index n_cells, double period, Field lapse, Field spatial_sqrt_g)
    : name_(std::move(name)),
      n_cells_(n_cells),
      period_(period),
      lapse_(std::move(lapse)),
      gamma_(std::move(spatial_sqrt_g)) {
  if (n_cells_ < 4) throw DomainError(fmt::format("Foliation1p1: need at least 4 cells, got {}", n_cells_));
  if (!(period_ > 0.0)) throw DomainError(fmt::format("Foliation1p1: period must be positive, got {}", period_));
  check_slice(0.0);
}

void Foliation1p1::check_slice(double t) const {
  for (Index i = 0; i < n_cells_; ++i) {
    const double n = lapse(t, i);
    const double g = spatial_sqrt_g(t, i);
    if (!(n > 0.0) || !(g > 0.0) || !std::isfinite(n) || !std::isfinite(g))
      throw DomainError(fmt::format("foliation '{}' degenerates at t = {}, cell {}: lapse {}, sqrt_g {}", name_, t, i,
                                    n, g));
  }
}

Foliation1p1 make_foliation(const std::string& family, Index n_cells, double period, double amplitude, double omega,
                            double hubble) {
  const double k = 2.0 * std::numbers::pi / period;
  if (family == "minkowski") {
    return Foliation1p1(family, n_cells, period, [](double, double) { return 1.0; },
                        [](double, double) { return 1.0; });
  }
  if (family == "lapse_wave") {
    return Foliation1p1(
        family, n_cells, period,
        [=](double t, double x) { return 1.0 + amplitude * std::sin(k * x) * std::cos(omega * t); },
        [](double, double) { return 1.0; });
  }
  if (family == "expanding") {
    return Foliation1p1(
        family, n_cells, period, [=](double, double x) { return 1.0 + amplitude * std::cos(k * x); },
        [=](double t, double) { return std::exp(hubble * t); });
  }
  throw DomainError(fmt::format("unknown foliation family '{}' (known: minkowski, lapse_wave, expanding)", family));
}

TimelikeFlux::TimelikeFlux(std::string name, Potential density, Potential spatial, StreamCorrection chi,
                           double state_min, double state_max)
    : name_(std::move(name)),
      density_(density),
      spatial_(spatial),
      chi_(chi),
      state_min_(state_min),
      state_max_(state_max) {
  if (!(state_min_ < state_max_))
    throw DomainError(fmt::format("TimelikeFlux: empty state range [{}, {}]", state_min_, state_max_));
  if (!(density_.min_deriv(state_min_, state_max_) > 0.0))
    throw DomainError("TimelikeFlux: phi_t must be strictly increasing on the state range (future orientation)");
  if (!(std::abs(chi_.amplitude) < 1.0))
    throw DomainError(fmt::format("TimelikeFlux: stream amplitude must satisfy |A| < 1, got {}", chi_.amplitude));
}

double TimelikeFlux::chi(const Foliation1p1& fol, double t, double x) const noexcept {
  if (chi_.amplitude == 0.0) return 0.0;
  const double k = 2.0 * std::numbers::pi / fol.period();
  return chi_.amplitude / k * std::sin(k * x) * std::sin(chi_.omega * t);
}

namespace {

struct ChiDerivatives {
  double dx;
  double dt;
};

ChiDerivatives chi_derivatives(const StreamCorrection& chi, const Foliation1p1& fol, double t, double x) {
  const double k = 2.0 * std::numbers::pi / fol.period();
  return {chi.amplitude * std::cos(k * x) * std::sin(chi.omega * t),
          chi.amplitude / k * chi.omega * std::sin(k * x) * std::cos(chi.omega * t)};
}

}  // namespace

Vec2 TimelikeFlux::eval(const Foliation1p1& fol, double t, Index cell, double u) const {
  const auto d = chi_derivatives(chi_, fol, t, fol.center(cell));
  const double vol = fol.lapse(t, cell) * fol.spatial_sqrt_g(t, cell);
  return {(1.0 + d.dx) * density_.value(u) / vol, (spatial_.value(u) - d.dt * density_.value(u)) / vol};
}

Vec2 TimelikeFlux::deriv(const Foliation1p1& fol, double t, Index cell, double u) const {
  const auto d = chi_derivatives(chi_, fol, t, fol.center(cell));
  const double vol = fol.lapse(t, cell) * fol.spatial_sqrt_g(t, cell);
  return {(1.0 + d.dx) * density_.deriv(u) / vol, (spatial_.deriv(u) - d.dt * density_.deriv(u)) / vol};
}

double TimelikeFlux::density_factor(const Foliation1p1& fol, double t, Index cell) const noexcept {
  if (chi_.amplitude == 0.0) return 1.0;
  const double right = fol.edge_position(cell);
  const double left = right - fol.dx();
  return 1.0 + (chi(fol, t, right) - chi(fol, t, left)) / fol.dx();
}

double TimelikeFlux::conserved_density(const Foliation1p1& fol, double t, Index cell, double u) const noexcept {
  return density_factor(fol, t, cell) * density_.value(u);
}

double TimelikeFlux::invert_density(const Foliation1p1& fol, double t, Index cell, double v) const {
  const double m = density_factor(fol, t, cell);
  const double target = v / m;
  double lo = state_min_;
  double hi = state_max_;
  const double f_lo = density_.value(lo);
  const double f_hi = density_.value(hi);
  const double slack = 1e-12 * std::max({1.0, std::abs(f_lo), std::abs(f_hi)});
  if (target < f_lo - slack || target > f_hi + slack)
    throw NumericalError(fmt::format("invert_density: density {} at cell {} (t = {}) is outside the range of phi_t "
                                     "on [{}, {}]; invariant domain lost",
                                     v, cell, t, state_min_, state_max_));
  if (target <= f_lo) return lo;
  if (target >= f_hi) return hi;
  // Invariant: phi_t(lo) < target <= phi_t(hi).
  while (hi - lo > 1e-13) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid == lo || mid == hi) break;
    if (density_.value(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  double best = hi;
  double best_res = std::abs(density_.value(hi) - target);
  if (std::abs(density_.value(lo) - target) < best_res) {
    best = lo;
    best_res = std::abs(density_.value(lo) - target);
  }
  double u = best;
  for (int it = 0; it < 3 && best_res > 0.0; ++it) {
    u = u - (density_.value(u) - target) / density_.deriv(u);
    if (!(u >= lo && u <= hi)) break;
    const double res = std::abs(density_.value(u) - target);
    if (res < best_res) {
      best = u;
      best_res = res;
    }
  }
  return best;
}

double TimelikeFlux::edge_chi_rate(const Foliation1p1& fol, double t0, double t1, Index e) const noexcept {
  if (chi_.amplitude == 0.0 || t1 == t0) return 0.0;
  const double x = fol.edge_position(e);
  return (chi(fol, t1, x) - chi(fol, t0, x)) / (t1 - t0);
}

double TimelikeFlux::chi_rate_bound(const Foliation1p1& fol) const noexcept {
  const double k = 2.0 * std::numbers::pi / fol.period();
  return std::abs(chi_.amplitude / k * chi_.omega);
}

TimelikeFlux make_timelike_flux(const std::string& family, double speed, StreamCorrection chi, double state_min,
                                double state_max) {
  if (family == "transport") return TimelikeFlux(family, Potential::linear(1.0), Potential::linear(speed), chi,
                                                 state_min, state_max);
  if (family == "burgers") return TimelikeFlux(family, Potential::linear(1.0), Potential(0.0, speed, 0.0), chi,
                                               state_min, state_max);
  throw DomainError(fmt::format("unknown Lorentzian flux family '{}' (known: transport, burgers)", family));
}

TimelikeReport check_timelike(const TimelikeFlux& flux, const Foliation1p1& fol,
                              const std::vector<TimelikeSample>& samples) {
  TimelikeReport report{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (const auto& s : samples) {
    const Vec2 d = flux.deriv(fol, s.t, s.cell, s.u);
    const double n = fol.lapse(s.t, s.cell);
    const double g = fol.spatial_sqrt_g(s.t, s.cell);
    const double norm = -n * n * d.x * d.x + g * g * d.y * d.y;
    report.max_norm = std::max(report.max_norm, norm);
    report.min_time_component = std::min(report.min_time_component, d.x);
  }
  return report;
}

std::vector<TimelikeSample> timelike_sample_grid(const TimelikeFlux& flux, const Foliation1p1& fol, double t_end,
                                                 Index n_times, Index n_states) {
  std::vector<TimelikeSample> samples;
  const Index cell_stride = std::max<Index>(1, fol.n_cells() / 32);
  for (Index a = 0; a < n_times; ++a) {
    const double t = n_times > 1 ? t_end * static_cast<double>(a) / static_cast<double>(n_times - 1) : 0.0;
    for (Index i = 0; i < fol.n_cells(); i += cell_stride) {
      for (Index b = 0; b < n_states; ++b) {
        const double s = n_states > 1 ? static_cast<double>(b) / static_cast<double>(n_states - 1) : 0.5;
        samples.push_back({t, i, flux.state_min() + s * (flux.state_max() - flux.state_min())});
      }
    }
  }
  return samples;
}

void LorentzConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw DomainError(fmt::format("cfl must lie in (0, 1], got {}", cfl));
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError(fmt::format("t_end must be >= 0, got {}", t_end));
  if (record_every == 0) throw DomainError("record_every must be >= 1");
}

namespace {

// Dissipation speed in the conserved variable: max |D_x'| / (m_e min phi_t').
double edge_speed(const TimelikeFlux& flux, double chi_rate, double m_edge, double ul, double ur) {
  const double lo = std::min(ul, ur);
  const double hi = std::max(ul, ur);
  const auto& ct = flux.density().coefficients();
  const auto& cx = flux.spatial().coefficients();
  const Potential net(cx[0] - chi_rate * ct[0], cx[1] - chi_rate * ct[1], cx[2] - chi_rate * ct[2]);
  return net.max_abs_deriv(lo, hi) / (m_edge * flux.density().min_deriv(lo, hi));
}

double edge_speed_bound(const TimelikeFlux& flux, double chi_bound, double m_edge, double ul, double ur) {
  const double lo = std::min(ul, ur);
  const double hi = std::max(ul, ur);
  return (flux.spatial().max_abs_deriv(lo, hi) + chi_bound * flux.density().max_abs_deriv(lo, hi)) /
         (m_edge * flux.density().min_deriv(lo, hi));
}

class Stepper {
 public:
  Stepper(const TimelikeFlux& flux, const Foliation1p1& fol) : flux_(flux), fol_(fol) {}

  std::vector<double> densities(double t) const {
    std::vector<double> m(fol_.n_cells());
    for (Index i = 0; i < m.size(); ++i) m[i] = flux_.density_factor(fol_, t, i);
    return m;
  }

  // Largest dt with stability number 1 (speeds bounded uniformly in dt).
  double max_stable_dt(const std::vector<double>& u, double t) const {
    const Index n = fol_.n_cells();
    const auto m = densities(t);
    const double chi_bound = flux_.chi_rate_bound(fol_);
    std::vector<double> am(n);
    for (Index e = 0; e < n; ++e) {
      const double me = 0.5 * (m[e] + m[(e + 1) % n]);
      am[e] = edge_speed_bound(flux_, chi_bound, me, u[e], u[(e + 1) % n]) * me;
    }
    double rate = 0.0;
    for (Index i = 0; i < n; ++i) {
      const Index left_edge = (i + n - 1) % n;
      rate = std::max(rate, (am[left_edge] + am[i]) / (2.0 * fol_.dx() * m[i]));
    }
    return rate > 0.0 ? 1.0 / rate : std::numeric_limits<double>::infinity();
  }

  std::vector<double> advance(const std::vector<double>& u, double t, double dt) const {
    const Index n = fol_.n_cells();
    const auto m = densities(t);
    std::vector<double> g(n);
    for (Index e = 0; e < n; ++e) {
      const double ul = u[e];
      const double ur = u[(e + 1) % n];
      const double rate = flux_.edge_chi_rate(fol_, t, t + dt, e);
      const double me = 0.5 * (m[e] + m[(e + 1) % n]);
      const double a = edge_speed(flux_, rate, me, ul, ur);
      const double dl = flux_.spatial().value(ul) - rate * flux_.density().value(ul);
      const double dr = flux_.spatial().value(ur) - rate * flux_.density().value(ur);
      g[e] = 0.5 * (dl + dr) - 0.5 * (a * me) * (flux_.density().value(ur) - flux_.density().value(ul));
    }
    const double t_next = t + dt;
    std::vector<double> next(n);
    for (Index i = 0; i < n; ++i) {
      const Index left_edge = (i + n - 1) % n;
      // Same accumulation order as the Riemannian update.
      double net = 0.0;
      if (i == 0) {
        net += g[i];
        net -= g[left_edge];
      } else {
        net -= g[left_edge];
        net += g[i];
      }
      const double v = m[i] * flux_.density().value(u[i]) - (dt / fol_.dx()) * net;
      next[i] = flux_.invert_density(fol_, t_next, i, v);
    }
    return next;
  }

 private:
  const TimelikeFlux& flux_;
  const Foliation1p1& fol_;
};

void check_initial(const std::vector<double>& u0, const TimelikeFlux& flux, const Foliation1p1& fol) {
  if (u0.size() != fol.n_cells())
    throw DomainError(fmt::format("evolve: initial data has {} cells, foliation has {}", u0.size(), fol.n_cells()));
  for (Index i = 0; i < u0.size(); ++i) {
    if (!(u0[i] >= flux.state_min() && u0[i] <= flux.state_max()))
      throw DomainError(fmt::format("evolve: u0[{}] = {} outside the declared state range [{}, {}]", i, u0[i],
                                    flux.state_min(), flux.state_max()));
  }
}

void check_timelike_precondition(const TimelikeFlux& flux, const Foliation1p1& fol, double t_end) {
  const auto report = check_timelike(flux, fol, timelike_sample_grid(flux, fol, t_end));
  if (!report.timelike())
    throw DomainError(fmt::format("flux '{}' is not time-like and future oriented on foliation '{}' "
                                  "(max g(df, df) = {:.6g}, min df^t = {:.6g})",
                                  flux.name(), fol.name(), report.max_norm, report.min_time_component));
}

}  // namespace

LorentzRun evolve(const std::vector<double>& u0, const TimelikeFlux& flux, const Foliation1p1& fol,
                  const LorentzConfig& cfg) {
  cfg.validate();
  check_initial(u0, flux, fol);
  check_timelike_precondition(flux, fol, cfg.t_end);
  const Stepper stepper(flux, fol);

  LorentzRun run;
  run.times.push_back(0.0);
  run.states.push_back(u0);
  std::vector<double> u = u0;
  double t = 0.0;
  while (t < cfg.t_end) {
    double dt = cfg.cfl * stepper.max_stable_dt(u, t);
    const bool last = dt >= cfg.t_end - t;
    if (last) dt = cfg.t_end - t;
    u = stepper.advance(u, t, dt);
    t = last ? cfg.t_end : t + dt;
    ++run.steps;
    fol.check_slice(t);
    if (last || run.steps % cfg.record_every == 0) {
      run.times.push_back(t);
      run.states.push_back(u);
    }
  }
  return run;
}

std::pair<LorentzRun, LorentzRun> evolve_pair(const std::vector<double>& u0, const std::vector<double>& v0,
                                              const TimelikeFlux& flux, const Foliation1p1& fol,
                                              const LorentzConfig& cfg) {
  cfg.validate();
  check_initial(u0, flux, fol);
  check_initial(v0, flux, fol);
  check_timelike_precondition(flux, fol, cfg.t_end);
  const Stepper stepper(flux, fol);

  std::pair<LorentzRun, LorentzRun> runs;
  auto& [ru, rv] = runs;
  std::vector<double> u = u0;
  std::vector<double> v = v0;
  ru.times.push_back(0.0);
  ru.states.push_back(u);
  rv.times.push_back(0.0);
  rv.states.push_back(v);
  double t = 0.0;
  while (t < cfg.t_end) {
    double dt = cfg.cfl * std::min(stepper.max_stable_dt(u, t), stepper.max_stable_dt(v, t));
    const bool last = dt >= cfg.t_end - t;
    if (last) dt = cfg.t_end - t;
    u = stepper.advance(u, t, dt);
    v = stepper.advance(v, t, dt);
    t = last ? cfg.t_end : t + dt;
    ++ru.steps;
    ++rv.steps;
    if (last || ru.steps % cfg.record_every == 0) {
      ru.times.push_back(t);
      ru.states.push_back(u);
      rv.times.push_back(t);
      rv.states.push_back(v);
    }
  }
  return runs;
}

SliceEntropy SliceEntropy::quadratic() {
  return SliceEntropy{"quadratic", false, 0.0,
                      ConvexEntropy{[](double u) { return u * u; }, [](double u) { return 2.0 * u; }}};
}

SliceEntropy SliceEntropy::kruzkov_at(double k) {
  return SliceEntropy{fmt::format("kruzkov_{:.6g}", k), true, k,
                      ConvexEntropy{[k](double u) { return std::abs(u - k); },
                                    [k](double u) { return u > k ? 1.0 : (u < k ? -1.0 : 0.0); }}};
}

double trace_entropy_norm(const std::vector<double>& u, const SliceEntropy& entropy, const TimelikeFlux& flux,
                          const Foliation1p1& fol, double t) {
  if (u.size() != fol.n_cells()) throw DomainError("trace_entropy_norm: state does not match the foliation");
  double sum = 0.0;
  for (Index i = 0; i < u.size(); ++i) {
    const double m = flux.density_factor(fol, t, i);
    double density = 0.0;
    if (entropy.kruzkov) {
      density = m * std::abs(flux.density().value(u[i]) - flux.density().value(entropy.k));
    } else if (u[i] != 0.0) {
      double error = 0.0;
      const double integral = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
          [&](double s) { return entropy.entropy.deriv(s) * flux.density().deriv(s); }, 0.0, u[i], 15, 1e-14,
          &error);
      density = m * integral;
    }
    sum += fol.dx() * std::abs(density);
  }
  return sum;
}

double l1_flux_distance(const std::vector<double>& u, const std::vector<double>& v, const TimelikeFlux& flux,
                        const Foliation1p1& fol, double t) {
  if (u.size() != fol.n_cells() || v.size() != fol.n_cells())
    throw DomainError("l1_flux_distance: states do not match the foliation");
  double sum = 0.0;
  for (Index i = 0; i < u.size(); ++i)
    sum += fol.dx() * std::abs(flux.conserved_density(fol, t, i, u[i]) - flux.conserved_density(fol, t, i, v[i]));
  return sum;
}

double slice_mass(const std::vector<double>& u, const TimelikeFlux& flux, const Foliation1p1& fol, double t) {
  double sum = 0.0;
  for (Index i = 0; i < u.size(); ++i) sum += fol.dx() * flux.conserved_density(fol, t, i, u[i]);
  return sum;
}

}  // namespace mcl
