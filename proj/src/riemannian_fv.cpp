#include "mcl/riemannian_fv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "mcl/error.hpp"

namespace mcl {

NumericalFlux parse_numerical_flux(std::string_view name) {
  if (name == "rusanov") return NumericalFlux::rusanov;
  if (name == "godunov_scalar") return NumericalFlux::godunov_scalar;
  throw DomainError(fmt::format("unknown numerical flux '{}' (known: rusanov, godunov_scalar)", name));
}

std::string_view to_string(NumericalFlux flux) noexcept {
  return flux == NumericalFlux::rusanov ? "rusanov" : "godunov_scalar";
}

void FvConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw DomainError(fmt::format("cfl must lie in (0, 1], got {}", cfl));
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError(fmt::format("t_end must be >= 0, got {}", t_end));
  if (record_every == 0) throw DomainError("record_every must be >= 1");
}

NormSample measure_norms(const CellComplex& mesh, std::span<const double> u) {
  NormSample s;
  double sq = 0.0;
  for (Index i = 0; i < u.size(); ++i) {
    const double v = mesh.volume(i);
    s.l1 += v * std::abs(u[i]);
    sq += v * u[i] * u[i];
    s.linf = std::max(s.linf, std::abs(u[i]));
    s.mass += v * u[i];
  }
  s.l2 = std::sqrt(sq);
  return s;
}

void NormSeries::append(double t, const NormSample& s) {
  times.push_back(t);
  l1.push_back(s.l1);
  l2.push_back(s.l2);
  linf.push_back(s.linf);
  mass.push_back(s.mass);
}

namespace {

double edge_speed(const FluxField& flux, Index e, double ul, double ur) {
  return flux.edge_max_speed(e, std::min(ul, ur), std::max(ul, ur));
}

double rusanov(const FluxField& flux, Index e, double ul, double ur, double a) {
  return 0.5 * (flux.edge_flux(e, ul) + flux.edge_flux(e, ur)) - 0.5 * a * (ur - ul);
}

void check_mesh(const CellComplex& mesh, const CellField& u, const FluxField& flux, const char* op) {
  if (u.mesh_id() != mesh.mesh_id() || flux.mesh_id() != mesh.mesh_id() || u.size() != mesh.n_cells())
    throw DomainError(fmt::format("{}: field, flux and mesh do not belong together", op));
}

std::vector<double> edge_speeds(const CellComplex& mesh, const FluxField& flux, std::span<const double> u) {
  std::vector<double> a(mesh.n_edges());
  for (Index e = 0; e < mesh.n_edges(); ++e) a[e] = edge_speed(flux, e, u[mesh.left(e)], u[mesh.right(e)]);
  return a;
}

// max_i sum_{e in i} a_e / (2 V_i)
double stability_rate(const CellComplex& mesh, std::span<const double> a) {
  double rate = 0.0;
  for (Index i = 0; i < mesh.n_cells(); ++i) {
    double sum = 0.0;
    for (Index e : mesh.cell_edges(i)) sum += a[e];
    rate = std::max(rate, sum / (2.0 * mesh.volume(i)));
  }
  return rate;
}

}  // namespace

double numerical_edge_flux(const FluxField& flux, NumericalFlux scheme, Index e, double u_left, double u_right) {
  if (scheme == NumericalFlux::godunov_scalar) return flux.edge_godunov(e, u_left, u_right);
  return rusanov(flux, e, u_left, u_right, edge_speed(flux, e, u_left, u_right));
}

double cfl_number(const CellComplex& mesh, const FluxField& flux, std::span<const double> u, double dt) {
  return dt * stability_rate(mesh, edge_speeds(mesh, flux, u));
}

double max_stable_dt(const CellComplex& mesh, const FluxField& flux, std::span<const double> u) {
  const double rate = stability_rate(mesh, edge_speeds(mesh, flux, u));
  return rate > 0.0 ? 1.0 / rate : std::numeric_limits<double>::infinity();
}

CellField step(const CellComplex& mesh, const CellField& u, const FluxField& flux, double dt, NumericalFlux scheme) {
  check_mesh(mesh, u, flux, "step");
  if (!(dt >= 0.0)) throw DomainError(fmt::format("step: dt must be >= 0, got {}", dt));
  if (scheme == NumericalFlux::godunov_scalar && flux.dim() != 1)
    throw DomainError("step: godunov_scalar is only available on 1-D meshes");
  const auto values = u.values();
  const auto a = edge_speeds(mesh, flux, values);
  const double nu = dt * stability_rate(mesh, a);
  if (nu > 1.0 + 1e-12) {
    const double admissible = dt / nu;
    throw CflError(fmt::format("step: dt = {} violates the CFL condition (number {:.6g}); admissible dt <= {}", dt,
                               nu, admissible),
                   admissible);
  }

  std::vector<double> edge(mesh.n_edges());
  for (Index e = 0; e < mesh.n_edges(); ++e) {
    const double ul = values[mesh.left(e)];
    const double ur = values[mesh.right(e)];
    edge[e] = scheme == NumericalFlux::godunov_scalar ? flux.edge_godunov(e, ul, ur) : rusanov(flux, e, ul, ur, a[e]);
  }
  std::vector<double> next(values.begin(), values.end());
  for (Index i = 0; i < mesh.n_cells(); ++i) {
    double net = 0.0;
    for (Index e : mesh.cell_edges(i)) net += mesh.left(e) == i ? edge[e] : -edge[e];
    next[i] = values[i] - (dt / mesh.volume(i)) * net;
  }
  return CellField(std::move(next), mesh.mesh_id());
}

SolveResult solve(const CellComplex& mesh, const CellField& u0, const FluxField& flux, const FvConfig& cfg,
                  const StepObserver& observer) {
  cfg.validate();
  check_mesh(mesh, u0, flux, "solve");
  SolveResult result{u0, {}, 0, 0.0};
  result.norms.append(0.0, measure_norms(mesh, u0.values()));
  if (observer) observer(0, 0.0, u0);

  while (result.t < cfg.t_end) {
    double dt = cfg.cfl * max_stable_dt(mesh, flux, result.u.values());
    const bool last = dt >= cfg.t_end - result.t;
    if (last) dt = cfg.t_end - result.t;
    result.u = step(mesh, result.u, flux, dt, cfg.numerical_flux);
    result.t = last ? cfg.t_end : result.t + dt;
    ++result.steps;
    if (last || result.steps % cfg.record_every == 0) {
      result.norms.append(result.t, measure_norms(mesh, result.u.values()));
      if (observer) observer(result.steps, result.t, result.u);
    }
  }
  return result;
}

namespace {

double l1_distance(const CellComplex& mesh, const CellField& u, const CellField& v) {
  double d = 0.0;
  for (Index i = 0; i < mesh.n_cells(); ++i) d += mesh.volume(i) * std::abs(u[i] - v[i]);
  return d;
}

}  // namespace

ContractionSeries contraction_harness(const CellComplex& mesh, const CellField& u0, const CellField& v0,
                                      const FluxField& flux, const FvConfig& cfg) {
  cfg.validate();
  if (u0.mesh_id() != v0.mesh_id()) throw DomainError("contraction_harness: u0 and v0 live on different meshes");
  check_mesh(mesh, u0, flux, "contraction_harness");
  check_mesh(mesh, v0, flux, "contraction_harness");

  ContractionSeries series;
  CellField u = u0;
  CellField v = v0;
  double t = 0.0;
  series.times.push_back(t);
  series.distance.push_back(l1_distance(mesh, u, v));
  std::size_t steps = 0;
  while (t < cfg.t_end) {
    double dt = cfg.cfl * std::min(max_stable_dt(mesh, flux, u.values()), max_stable_dt(mesh, flux, v.values()));
    const bool last = dt >= cfg.t_end - t;
    if (last) dt = cfg.t_end - t;
    u = step(mesh, u, flux, dt, cfg.numerical_flux);
    v = step(mesh, v, flux, dt, cfg.numerical_flux);
    t = last ? cfg.t_end : t + dt;
    ++steps;
    if (last || steps % cfg.record_every == 0) {
      series.times.push_back(t);
      series.distance.push_back(l1_distance(mesh, u, v));
    }
  }
  return series;
}

std::vector<double> entropy_residual(const CellComplex& mesh, const CellField& u_before, const CellField& u_after,
                                     const FluxField& flux, double dt, double k, NumericalFlux scheme) {
  check_mesh(mesh, u_before, flux, "entropy_residual");
  check_mesh(mesh, u_after, flux, "entropy_residual");
  if (!(dt > 0.0)) throw DomainError("entropy_residual: dt must be positive");

  std::vector<double> g(mesh.n_edges());
  for (Index e = 0; e < mesh.n_edges(); ++e) {
    const double ul = u_before[mesh.left(e)];
    const double ur = u_before[mesh.right(e)];
    if (scheme == NumericalFlux::godunov_scalar) {
      g[e] = flux.edge_godunov(e, std::max(ul, k), std::max(ur, k)) -
             flux.edge_godunov(e, std::min(ul, k), std::min(ur, k));
    } else {
      const double a = edge_speed(flux, e, ul, ur);
      g[e] = 0.5 * (kruzkov_edge_flux(flux, e, ul, k) + kruzkov_edge_flux(flux, e, ur, k)) -
             0.5 * a * (std::abs(ur - k) - std::abs(ul - k));
    }
  }
  std::vector<double> residual(mesh.n_cells());
  for (Index i = 0; i < mesh.n_cells(); ++i) {
    double net = 0.0;
    for (Index e : mesh.cell_edges(i)) net += mesh.left(e) == i ? g[e] : -g[e];
    residual[i] = (std::abs(u_after[i] - k) - std::abs(u_before[i] - k)) / dt + net / mesh.volume(i);
  }
  return residual;
}

}  // namespace mcl
