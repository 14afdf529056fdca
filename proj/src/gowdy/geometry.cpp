#include "mcl/gowdy/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "mcl/error.hpp"

namespace mcl::gowdy {

GeometryState GeometryState::flat(std::size_t n) {
  const std::vector<double> zero(n, 0.0);
  return {zero, zero, zero, zero, zero, zero, zero, zero, zero, 0.0, 1.0};
}

double GeometryState::alpha(std::size_t i) const { return std::exp(2.0 * a[i]); }
double GeometryState::beta(std::size_t i) const { return std::exp(2.0 * b[i]); }
double GeometryState::beta_t(std::size_t i) const { return 2.0 * bt[i] * beta(i); }
double GeometryState::beta_x(std::size_t i) const { return 2.0 * bx[i] * beta(i); }

MatterTerms MatterTerms::vacuum(std::size_t n) {
  const std::vector<double> zero(n, 0.0);
  return {zero, zero, zero};
}

MatterTerms MatterTerms::from_fluid(const std::vector<FluidState>& fluid, double c_s) {
  MatterTerms m{std::vector<double>(fluid.size()), std::vector<double>(fluid.size()),
                std::vector<double>(fluid.size())};
  for (std::size_t i = 0; i < fluid.size(); ++i) {
    const auto q = primitive_to_conserved(fluid[i], c_s);
    m.tau[i] = q.tau;
    m.Sigma[i] = q.Sigma;
    m.p[i] = pressure(fluid[i], c_s);
  }
  return m;
}

namespace {

void check_sizes(const GeometryState& geo) {
  const std::size_t n = geo.a.size();
  for (const auto* v : {&geo.b, &geo.c, &geo.at, &geo.ax, &geo.bt, &geo.bx, &geo.ct, &geo.cx})
    if (v->size() != n) throw DomainError("GeometryState: field sizes differ");
  if (n < 3) throw DomainError("GeometryState: need at least 3 grid points");
}

// Time derivative of the whole state.
GeometryState rate(const GeometryState& s, const MatterTerms& m, double dx, double kappa, double t,
                   const GeometryForcing& forcing) {
  const std::size_t n = s.size();
  GeometryState d = GeometryState::flat(n);
  const double h = 1.0 / (2.0 * dx);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t l = (i + n - 1) % n;
    const std::size_t r = (i + 1) % n;
    const double bt = s.bt[i];
    const double bx = s.bx[i];
    const double ct = s.ct[i];
    const double cx = s.cx[i];
    const double e2a = std::exp(2.0 * s.a[i]);
    double fa = bt * bt - bx * bx - ct * ct + cx * cx + 0.5 * kappa * e2a * (-m.tau[i] + m.Sigma[i] - 2.0 * m.p[i]);
    double fb = -2.0 * bt * bt + 2.0 * bx * bx + 0.5 * kappa * e2a * (m.tau[i] - m.Sigma[i]);
    double fc = -2.0 * bt * ct + 2.0 * bx * cx;
    if (forcing) {
      const auto f = forcing(t, static_cast<double>(i) * dx);
      fa += f[0];
      fb += f[1];
      fc += f[2];
    }
    d.a[i] = s.at[i];
    d.b[i] = bt;
    d.c[i] = ct;
    d.at[i] = (s.ax[r] - s.ax[l]) * h + fa;
    d.bt[i] = (s.bx[r] - s.bx[l]) * h + fb;
    d.ct[i] = (s.cx[r] - s.cx[l]) * h + fc;
    d.ax[i] = (s.at[r] - s.at[l]) * h;
    d.bx[i] = (s.bt[r] - s.bt[l]) * h;
    d.cx[i] = (s.ct[r] - s.ct[l]) * h;
  }
  d.a0 = s.at[0];
  d.beta0 = 2.0 * s.bt[0] * s.beta0;
  return d;
}

// out = wa * x + wb * (y + dt * dy)
GeometryState combine(double wa, const GeometryState& x, double wb, const GeometryState& y, double dt,
                      const GeometryState& dy) {
  GeometryState out = x;
  const auto mix = [&](std::vector<double> GeometryState::*f) {
    auto& o = out.*f;
    const auto& xv = x.*f;
    const auto& yv = y.*f;
    const auto& dv = dy.*f;
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = wa * xv[i] + wb * (yv[i] + dt * dv[i]);
  };
  for (auto f : {&GeometryState::a, &GeometryState::b, &GeometryState::c, &GeometryState::at, &GeometryState::ax,
                 &GeometryState::bt, &GeometryState::bx, &GeometryState::ct, &GeometryState::cx})
    mix(f);
  out.a0 = wa * x.a0 + wb * (y.a0 + dt * dy.a0);
  out.beta0 = wa * x.beta0 + wb * (y.beta0 + dt * dy.beta0);
  return out;
}

}  // namespace

GeometryState geometry_step(const GeometryState& geo, const MatterTerms& matter, double dt, double dx, double kappa,
                            double t, const GeometryForcing& forcing) {
  check_sizes(geo);
  const std::size_t n = geo.size();
  if (matter.tau.size() != n || matter.Sigma.size() != n || matter.p.size() != n)
    throw DomainError("geometry_step: matter terms do not match the grid");
  if (!(dx > 0.0) || !(dt >= 0.0)) throw DomainError(fmt::format("geometry_step: invalid dx = {}, dt = {}", dx, dt));
  if (dt > dx * (1.0 + 1e-12))
    throw CflError(fmt::format("geometry_step: dt = {} exceeds the light-cone bound dt <= dx = {}", dt, dx), dx);
  if (dt == 0.0) return geo;

  const GeometryState k1 = rate(geo, matter, dx, kappa, t, forcing);
  const GeometryState s1 = combine(0.0, geo, 1.0, geo, dt, k1);
  const GeometryState k2 = rate(s1, matter, dx, kappa, t + dt, forcing);
  const GeometryState s2 = combine(0.75, geo, 0.25, s1, dt, k2);
  const GeometryState k3 = rate(s2, matter, dx, kappa, t + 0.5 * dt, forcing);
  return combine(1.0 / 3.0, geo, 2.0 / 3.0, s2, dt, k3);
}

MetricFields reconstruct_metric(const GeometryState& geo, double dx) {
  check_sizes(geo);
  const std::size_t n = geo.size();
  MetricFields m{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
  m.a[0] = geo.a0;
  m.beta[0] = geo.beta0;
  for (std::size_t i = 1; i < n; ++i) {
    m.a[i] = m.a[i - 1] + 0.5 * dx * (geo.ax[i - 1] + geo.ax[i]);
    m.beta[i] = m.beta[i - 1] + 0.5 * dx * (geo.beta_x(i - 1) + geo.beta_x(i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    m.alpha[i] = std::exp(2.0 * m.a[i]);
    m.b[i] = m.beta[i] > 0.0 ? 0.5 * std::log(m.beta[i]) : std::numeric_limits<double>::quiet_NaN();
  }
  return m;
}

double ConstraintResidual::max_abs_r1() const {
  double m = 0.0;
  for (double r : r1) m = std::max(m, std::abs(r));
  return m;
}

double ConstraintResidual::max_abs_r2() const {
  double m = 0.0;
  for (double r : r2) m = std::max(m, std::abs(r));
  return m;
}

ConstraintResidual constraint_residual(const GeometryState& geo, const std::vector<FluidState>& fluid, double dx,
                                       double kappa, double c_s) {
  check_sizes(geo);
  const std::size_t n = geo.size();
  if (!fluid.empty() && fluid.size() != n) throw DomainError("constraint_residual: fluid does not match the grid");
  ConstraintResidual res{std::vector<double>(n), std::vector<double>(n)};
  const double h = 1.0 / (2.0 * dx);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t l = (i + n - 1) % n;
    const std::size_t r = (i + 1) % n;
    const double at = geo.at[i], ax = geo.ax[i], bt = geo.bt[i], bx = geo.bx[i], ct = geo.ct[i], cx = geo.cx[i];
    const double bxx = (geo.bx[r] - geo.bx[l]) * h;
    const double btx = (geo.bt[r] - geo.bt[l]) * h;
    double tau = 0.0;
    double S = 0.0;
    if (!fluid.empty()) {
      const auto q = primitive_to_conserved(fluid[i], c_s);
      tau = q.tau;
      S = q.S;
    }
    const double e2a = std::exp(2.0 * geo.a[i]);
    res.r1[i] = 2.0 * at * bt + 2.0 * ax * bx + bt * bt - 2.0 * bxx - 3.0 * bx * bx - ct * ct - cx * cx -
                kappa * e2a * tau;
    res.r2[i] = -2.0 * at * bx - 2.0 * ax * bt + 2.0 * btx + 2.0 * bt * bx + 2.0 * ct * cx - kappa * e2a * S;
  }
  return res;
}

}  // namespace mcl::gowdy
