#include "mcl/gowdy/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "mcl/error.hpp"
#include "mcl/gowdy/glimm.hpp"

namespace mcl::gowdy {

Splitting parse_splitting(std::string_view name) {
  if (name == "lie") return Splitting::lie;
  if (name == "strang") return Splitting::strang;
  throw DomainError(fmt::format("unknown splitting '{}' (known: lie, strang)", name));
}

std::string_view to_string(Splitting s) noexcept { return s == Splitting::lie ? "lie" : "strang"; }

void GowdyConfig::validate() const {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError(fmt::format("kappa must be > 0, got {}", kappa));
  if (!(c_s > 0.0 && c_s < 1.0)) throw DomainError(fmt::format("sound speed must satisfy 0<c_s<1, got {}", c_s));
  if (n_cells < 4) throw DomainError(fmt::format("n_cells must be >= 4, got {}", n_cells));
  if (!(length > 0.0) || !std::isfinite(length)) throw DomainError(fmt::format("length must be > 0, got {}", length));
  if (!(cfl > 0.0 && cfl <= 0.5))
    throw DomainError(fmt::format("gowdy cfl must lie in (0, 0.5] (Glimm half-CFL), got {}", cfl));
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError(fmt::format("t_end must be >= 0, got {}", t_end));
  if (vdc_base < 2) throw DomainError(fmt::format("van der Corput base must be >= 2, got {}", vdc_base));
  if (record_every == 0) throw DomainError("record_every must be >= 1");
  if (!(thresholds.alpha_b_ceiling > 0.0) || !(thresholds.mu_ceiling > 0.0) || !(thresholds.beta_floor >= 0.0))
    throw DomainError("blow-up thresholds must be positive");
}

std::array<double, 2> euler_sources(double at, double ax, double bt, double bx, const ConservedFluid& q, double p) {
  const double t1 = -(at + 2.0 * bt) * q.tau - 2.0 * (ax + bx) * q.S - at * q.Sigma - 2.0 * bt * p;
  const double t2 = -ax * q.tau - 2.0 * (at + bt) * q.S - (ax + 2.0 * bx) * q.Sigma + 2.0 * bx * p;
  return {t1, t2};
}

std::vector<FluidState> fluid_source_step(const std::vector<FluidState>& fluid, const GeometryState& geo, double dt,
                                          double dx, double c_s, double t, const FluidForcing& forcing) {
  if (fluid.size() != geo.size()) throw DomainError("fluid_source_step: fluid does not match the geometry grid");
  if (!(dt >= 0.0)) throw DomainError(fmt::format("fluid_source_step: dt must be >= 0, got {}", dt));
  std::vector<FluidState> next = fluid;
  if (dt == 0.0) return next;
  const double c2 = c_s * c_s;
  for (std::size_t i = 0; i < fluid.size(); ++i) {
    const double x = static_cast<double>(i) * dx;
    const auto q0 = primitive_to_conserved(fluid[i], c_s);
    auto k1 = euler_sources(geo.at[i], geo.ax[i], geo.bt[i], geo.bx[i], q0, c2 * fluid[i].mu);
    if (forcing) {
      const auto f = forcing(t, x);
      k1[0] += f[0];
      k1[1] += f[1];
    }
    const double tau_h = q0.tau + 0.5 * dt * k1[0];
    const double s_h = q0.S + 0.5 * dt * k1[1];
    const FluidState half = conserved_to_primitive(tau_h, s_h, c_s);
    auto k2 = euler_sources(geo.at[i], geo.ax[i], geo.bt[i], geo.bx[i], primitive_to_conserved(half, c_s),
                            c2 * half.mu);
    if (forcing) {
      const auto f = forcing(t + 0.5 * dt, x);
      k2[0] += f[0];
      k2[1] += f[1];
    }
    const double tau1 = q0.tau + dt * k2[0];
    const double s1 = q0.S + dt * k2[1];
    if (tau1 == q0.tau && s1 == q0.S) continue;
    next[i] = conserved_to_primitive(tau1, s1, c_s);
  }
  return next;
}

double tv_norm(const std::vector<double>& field) {
  const std::size_t n = field.size();
  double tv = 0.0;
  for (std::size_t i = 0; i < n; ++i) tv += std::abs(field[(i + 1) % n] - field[i]);
  return tv;
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::running:
      return "running";
    case Verdict::geometry_blowup:
      return "geometry_blowup";
    case Verdict::matter_blowup:
      return "matter_blowup";
    case Verdict::completed:
      return "completed";
  }
  return "running";
}

namespace {

bool all_finite(const GeometryState& geo) {
  for (const auto* v : {&geo.a, &geo.b, &geo.c, &geo.at, &geo.ax, &geo.bt, &geo.bx, &geo.ct, &geo.cx})
    for (double x : *v)
      if (!std::isfinite(x)) return false;
  return std::isfinite(geo.a0) && std::isfinite(geo.beta0);
}

double sup_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

Verdict blowup_monitor(const GeometryState& geo, const std::vector<FluidState>& fluid, double dx,
                       const BlowupThresholds& thresholds) {
  if (!all_finite(geo)) return Verdict::geometry_blowup;
  const auto metric = reconstruct_metric(geo, dx);
  for (std::size_t i = 0; i < geo.size(); ++i)
    if (!(metric.beta[i] > thresholds.beta_floor)) return Verdict::geometry_blowup;
  const double alpha_b = sup_abs(metric.alpha) + sup_abs(metric.b);
  if (!std::isfinite(alpha_b) || alpha_b > thresholds.alpha_b_ceiling) return Verdict::geometry_blowup;
  for (const auto& f : fluid)
    if (!std::isfinite(f.mu) || f.mu > thresholds.mu_ceiling) return Verdict::matter_blowup;
  return Verdict::running;
}

SeriesRow measure(double t, const GeometryState& geo, const std::vector<FluidState>& fluid, const GowdyConfig& cfg) {
  const std::size_t n = geo.size();
  SeriesRow row;
  row.t = t;
  std::vector<double> mu(n), v(n), beta_t(n), beta_x(n);
  for (std::size_t i = 0; i < n; ++i) {
    mu[i] = fluid[i].mu;
    v[i] = fluid[i].v;
    beta_t[i] = geo.beta_t(i);
    beta_x[i] = geo.beta_x(i);
    row.sup_mu = std::max(row.sup_mu, fluid[i].mu);
  }
  row.tv_mu = tv_norm(mu);
  row.tv_v = tv_norm(v);
  row.tv_w = tv_norm(geo.at) + tv_norm(geo.ax) + tv_norm(beta_t) + tv_norm(beta_x) + tv_norm(geo.ct) + tv_norm(geo.cx);
  const auto metric = reconstruct_metric(geo, cfg.dx());
  row.sup_alpha_b = sup_abs(metric.alpha) + sup_abs(metric.b);
  row.min_beta = *std::min_element(metric.beta.begin(), metric.beta.end());
  const auto res = constraint_residual(geo, fluid, cfg.dx(), cfg.kappa, cfg.c_s);
  row.max_r1 = res.max_abs_r1();
  row.max_r2 = res.max_abs_r2();
  return row;
}

GowdyData constraint_compatible_data(const CompatibleFamily& family, const GowdyConfig& cfg) {
  cfg.validate();
  if (family.bt0 == 0.0) throw DomainError("constraint-compatible family needs bt0 != 0");
  if (!(family.mu > 0.0)) throw DomainError(fmt::format("constraint-compatible family needs mu > 0, got {}", family.mu));
  const std::size_t n = cfg.n_cells;
  const double k = 2.0 * std::numbers::pi / cfg.length;
  const auto cx_at = [&](double x) { return -family.eps * k * std::sin(k * x); };
  const auto ax_at = [&](double x) { return family.ct0 * cx_at(x) / family.bt0; };

  GowdyData data{GeometryState::flat(n), std::vector<FluidState>(n, FluidState{family.mu, 0.0})};
  auto& g = data.geo;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) * cfg.dx();
    const double a = i == 0 ? family.a0
                            : family.a0 + boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
                                              ax_at, 0.0, x, 15, 1e-14);
    g.a[i] = a;
    g.b[i] = family.b0;
    g.c[i] = family.eps * std::cos(k * x);
    g.ax[i] = ax_at(x);
    g.bt[i] = family.bt0;
    g.bx[i] = 0.0;
    g.ct[i] = family.ct0;
    g.cx[i] = cx_at(x);
    g.at[i] = (cfg.kappa * std::exp(2.0 * a) * family.mu + family.ct0 * family.ct0 + g.cx[i] * g.cx[i] -
               family.bt0 * family.bt0) /
              (2.0 * family.bt0);
  }
  g.a0 = family.a0;
  g.beta0 = std::exp(2.0 * family.b0);
  return data;
}

GowdyData riemann_data(const FluidState& left, const FluidState& right, const GowdyConfig& cfg) {
  cfg.validate();
  check_physical(left);
  check_physical(right);
  const std::size_t n = cfg.n_cells;
  GowdyData data{GeometryState::flat(n), std::vector<FluidState>(n)};
  for (std::size_t i = 0; i < n; ++i) data.fluid[i] = i < n / 2 ? left : right;
  return data;
}

namespace {

GowdyData source_then_geometry(const GowdyData& s, double t, double dt, const GowdyConfig& cfg,
                               const ManufacturedForcing& forcing) {
  GowdyData out;
  out.fluid = fluid_source_step(s.fluid, s.geo, dt, cfg.dx(), cfg.c_s, t, forcing.fluid);
  out.geo = geometry_step(s.geo, MatterTerms::from_fluid(out.fluid, cfg.c_s), dt, cfg.dx(), cfg.kappa, t,
                          forcing.geometry);
  return out;
}

GowdyData geometry_then_source(const GowdyData& s, double t, double dt, const GowdyConfig& cfg,
                               const ManufacturedForcing& forcing) {
  GowdyData out;
  out.geo = geometry_step(s.geo, MatterTerms::from_fluid(s.fluid, cfg.c_s), dt, cfg.dx(), cfg.kappa, t,
                          forcing.geometry);
  out.fluid = fluid_source_step(s.fluid, out.geo, dt, cfg.dx(), cfg.c_s, t, forcing.fluid);
  return out;
}

}  // namespace

GowdyData split_step(const GowdyData& state, double t, double dt, std::uint64_t step_index, const GowdyConfig& cfg,
                     const ManufacturedForcing& forcing) {
  if (cfg.splitting == Splitting::lie) {
    GowdyData s{state.geo, glimm_step(state.fluid, cfg.dx(), dt, step_index, cfg.c_s, cfg.vdc_base)};
    return source_then_geometry(s, t, dt, cfg, forcing);
  }
  GowdyData s = source_then_geometry(state, t, 0.5 * dt, cfg, forcing);
  s.fluid = glimm_step(s.fluid, cfg.dx(), dt, step_index, cfg.c_s, cfg.vdc_base);
  return geometry_then_source(s, t + 0.5 * dt, 0.5 * dt, cfg, forcing);
}

GowdyResult run_gowdy(const GowdyData& initial, const GowdyConfig& cfg, const GowdyObserver& observer) {
  cfg.validate();
  if (initial.geo.size() != cfg.n_cells || initial.fluid.size() != cfg.n_cells)
    throw DomainError(fmt::format("run_gowdy: initial data has {} geometry and {} fluid cells, config has {}",
                                  initial.geo.size(), initial.fluid.size(), cfg.n_cells));
  for (const auto& f : initial.fluid) check_physical(f);

  GowdyResult result{initial, 0.0, 0, {}, Verdict::running, {}};
  result.verdict = blowup_monitor(initial.geo, initial.fluid, cfg.dx(), cfg.thresholds);
  result.series.push_back(measure(0.0, initial.geo, initial.fluid, cfg));
  if (observer) observer(0, 0.0, initial);

  const double dt_max = cfg.cfl * cfg.dx();
  while (result.verdict == Verdict::running && result.t < cfg.t_end) {
    double dt = dt_max;
    const bool last = dt >= cfg.t_end - result.t;
    if (last) dt = cfg.t_end - result.t;
    GowdyData next;
    try {
      next = split_step(result.state, result.t, dt, result.steps + 1, cfg);
    } catch (const Error& e) {
      result.verdict = blowup_monitor(result.state.geo, result.state.fluid, cfg.dx(), cfg.thresholds);
      if (result.verdict == Verdict::running) result.verdict = Verdict::matter_blowup;
      result.message = e.what();
      result.series.back().verdict = result.verdict;
      break;
    }
    result.state = std::move(next);
    result.t = last ? cfg.t_end : result.t + dt;
    ++result.steps;
    result.verdict = blowup_monitor(result.state.geo, result.state.fluid, cfg.dx(), cfg.thresholds);
    if (result.verdict != Verdict::running || last || result.steps % cfg.record_every == 0) {
      result.series.push_back(measure(result.t, result.state.geo, result.state.fluid, cfg));
      if (observer) observer(result.steps, result.t, result.state);
    }
  }
  if (result.verdict == Verdict::running) result.verdict = Verdict::completed;
  result.series.back().verdict = result.verdict;
  return result;
}

}  // namespace mcl::gowdy
