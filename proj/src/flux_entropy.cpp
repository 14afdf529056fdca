#include "mcl/flux_entropy.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "mcl/error.hpp"

namespace mcl {

namespace {

// Real roots of a + b u + c u^2 inside [lo, hi].
std::vector<double> quadratic_roots_in(double a, double b, double c, double lo, double hi) {
  std::vector<double> roots;
  if (c == 0.0) {
    if (b != 0.0) roots.push_back(-a / b);
  } else {
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
      if (q != 0.0) {
        roots.push_back(q / c);
        roots.push_back(a / q);
      } else {
        roots.push_back(0.0);
      }
    }
  }
  std::erase_if(roots, [&](double r) { return !(r >= lo && r <= hi); });
  return roots;
}

}  // namespace

double Potential::max_abs_deriv(double lo, double hi) const noexcept {
  if (lo > hi) std::swap(lo, hi);
  double m = std::max(std::abs(deriv(lo)), std::abs(deriv(hi)));
  if (c_[2] != 0.0) {
    const double vertex = -c_[1] / (2.0 * c_[2]);
    if (vertex > lo && vertex < hi) m = std::max(m, std::abs(deriv(vertex)));
  }
  return m;
}

double Potential::min_deriv(double lo, double hi) const noexcept {
  if (lo > hi) std::swap(lo, hi);
  double m = std::min(deriv(lo), deriv(hi));
  if (c_[2] != 0.0) {
    const double vertex = -c_[1] / (2.0 * c_[2]);
    if (vertex > lo && vertex < hi) m = std::min(m, deriv(vertex));
  }
  return m;
}

std::array<double, 2> Potential::value_range(double lo, double hi) const noexcept {
  if (lo > hi) std::swap(lo, hi);
  double vmin = std::min(value(lo), value(hi));
  double vmax = std::max(value(lo), value(hi));
  for (double r : quadratic_roots_in(c_[0], c_[1], c_[2], lo, hi)) {
    const double v = value(r);
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  return {vmin, vmax};
}

FluxField::FluxField(const CellComplex& complex, int dim, std::vector<Potential> potentials,
                     std::vector<double> edge_weights, std::vector<Vec2> cell_coeffs,
                     std::vector<Sym2> cell_metric, double growth_range)
    : dim_(dim),
      mesh_id_(complex.mesh_id()),
      n_cells_(complex.n_cells()),
      n_edges_(complex.n_edges()),
      potentials_(std::move(potentials)),
      edge_weights_(std::move(edge_weights)),
      cell_coeffs_(std::move(cell_coeffs)),
      cell_metric_(std::move(cell_metric)) {
  const Index k = potentials_.size();
  if (dim_ != 1 && dim_ != 2) throw DomainError("FluxField: dim must be 1 or 2");
  if (k == 0) throw DomainError("FluxField: at least one potential term is required");
  if (edge_weights_.size() != n_edges_ * k || cell_coeffs_.size() != n_cells_ * k ||
      cell_metric_.size() != n_cells_)
    throw DomainError("FluxField: coefficient arrays do not match the mesh");
  if (!(growth_range > 0.0)) throw DomainError("FluxField: growth range must be positive");

  growth_.range = growth_range;
  for (Index c = 0; c < n_cells_; ++c) {
    double lip = 0.0;
    for (Index t = 0; t < k; ++t) {
      lip += norm_g(c, cell_coeffs_[c * k + t]) * potentials_[t].max_abs_deriv(-growth_range, growth_range);
    }
    growth_.c0 = std::max(growth_.c0, norm_g(c, eval(c, 0.0)));
    growth_.c1 = std::max(growth_.c1, lip);
  }
}

Vec2 FluxField::eval(Index cell, double u) const {
  const Index k = potentials_.size();
  Vec2 out;
  for (Index t = 0; t < k; ++t) {
    const double p = potentials_[t].value(u);
    out.x += cell_coeffs_[cell * k + t].x * p;
    out.y += cell_coeffs_[cell * k + t].y * p;
  }
  return out;
}

Vec2 FluxField::deriv(Index cell, double u) const {
  const Index k = potentials_.size();
  Vec2 out;
  for (Index t = 0; t < k; ++t) {
    const double p = potentials_[t].deriv(u);
    out.x += cell_coeffs_[cell * k + t].x * p;
    out.y += cell_coeffs_[cell * k + t].y * p;
  }
  return out;
}

double FluxField::norm_g(Index cell, Vec2 v) const {
  const Sym2& g = cell_metric_.at(cell);
  return std::sqrt(std::max(0.0, g.xx * v.x * v.x + 2.0 * g.xy * v.x * v.y + g.yy * v.y * v.y));
}

double FluxField::edge_flux(Index e, double u) const noexcept {
  const Index k = potentials_.size();
  double sum = 0.0;
  for (Index t = 0; t < k; ++t) sum += edge_weights_[e * k + t] * potentials_[t].value(u);
  return sum;
}

double FluxField::edge_deriv(Index e, double u) const noexcept {
  const Index k = potentials_.size();
  double sum = 0.0;
  for (Index t = 0; t < k; ++t) sum += edge_weights_[e * k + t] * potentials_[t].deriv(u);
  return sum;
}

double FluxField::edge_max_speed(Index e, double lo, double hi) const noexcept {
  const Index k = potentials_.size();
  double sum = 0.0;
  for (Index t = 0; t < k; ++t) sum += std::abs(edge_weights_[e * k + t]) * potentials_[t].max_abs_deriv(lo, hi);
  return sum;
}

double FluxField::edge_godunov(Index e, double u_left, double u_right) const {
  if (potentials_.size() != 1) throw DomainError("edge_godunov: only single-term fluxes have an exact scalar solver");
  const double w = edge_weights_[e];
  const auto [pmin, pmax] = potentials_[0].value_range(u_left, u_right);
  const double fmin = w >= 0.0 ? w * pmin : w * pmax;
  const double fmax = w >= 0.0 ? w * pmax : w * pmin;
  // Ends are evaluated directly so that equal states give F_e(u) bit-exactly.
  if (u_left == u_right) return edge_flux(e, u_left);
  return u_left < u_right ? fmin : fmax;
}

std::vector<double> FluxField::edge_fluxes(double u) const {
  std::vector<double> out(n_edges_);
  for (Index e = 0; e < n_edges_; ++e) out[e] = edge_flux(e, u);
  return out;
}

std::vector<double> sample_corners(const Metric2D& mesh, const std::function<double(double, double)>& fn) {
  std::vector<double> out(mesh.n_cells());
  for (Index j = 0; j < mesh.n_y(); ++j)
    for (Index i = 0; i < mesh.n_x(); ++i)
      out[i + mesh.n_x() * j] = fn(static_cast<double>(i) * mesh.dx(), static_cast<double>(j) * mesh.dy());
  return out;
}

namespace {

std::vector<Sym2> metric_1d(const Metric1D& mesh) {
  std::vector<Sym2> g(mesh.n_cells());
  for (Index i = 0; i < mesh.n_cells(); ++i) g[i] = Sym2{mesh.sqrt_g(i) * mesh.sqrt_g(i), 0.0, 1.0};
  return g;
}

}  // namespace

FluxField flux_from_potential_1d(const Metric1D& mesh, const Potential& phi, double growth_range) {
  const Index n = mesh.n_cells();
  std::vector<double> weights(n, 1.0);
  std::vector<Vec2> coeffs(n);
  for (Index i = 0; i < n; ++i) coeffs[i] = Vec2{1.0 / mesh.sqrt_g(i), 0.0};
  return FluxField(mesh.complex(), 1, {phi}, std::move(weights), std::move(coeffs), metric_1d(mesh), growth_range);
}

FluxField burgers_1d(const Metric1D& mesh, double growth_range) {
  return flux_from_potential_1d(mesh, Potential::burgers(), growth_range);
}

FluxField flux_from_field_1d(const Metric1D& mesh, const std::function<double(double)>& b, const Potential& phi,
                             double growth_range) {
  const Index n = mesh.n_cells();
  std::vector<double> weights(n);
  std::vector<Vec2> coeffs(n);
  for (Index i = 0; i < n; ++i) {
    weights[i] = mesh.edge_sqrt_g(i) * b(mesh.edge_position(i));
    coeffs[i] = Vec2{b(mesh.center(i)), 0.0};
  }
  return FluxField(mesh.complex(), 1, {phi}, std::move(weights), std::move(coeffs), metric_1d(mesh), growth_range);
}

FluxField flux_from_stream_2d(const Metric2D& mesh, const std::vector<StreamTerm>& psi, double growth_range) {
  if (psi.empty()) throw DomainError("flux_from_stream_2d: stream function has no terms");
  const Index n = mesh.n_cells();
  const Index k = psi.size();
  for (Index t = 0; t < k; ++t) {
    if (psi[t].corner_values.size() != n)
      throw DomainError(fmt::format("flux_from_stream_2d: term {} has {} values, expected {} corner samples", t,
                                    psi[t].corner_values.size(), n));
  }
  auto corner = [&](Index t, std::pair<Index, Index> ij) {
    return psi[t].corner_values[(ij.first % mesh.n_x()) + mesh.n_x() * (ij.second % mesh.n_y())];
  };

  std::vector<double> weights(mesh.n_edges() * k);
  for (Index e = 0; e < mesh.n_edges(); ++e) {
    const auto [start, end] = mesh.edge_corners(e);
    for (Index t = 0; t < k; ++t) {
      const double diff = corner(t, end) - corner(t, start);
      // x-face: int d_y psi dy; y-face: -int d_x psi dx.
      weights[e * k + t] = mesh.is_x_face(e) ? diff : -diff;
    }
  }

  std::vector<Vec2> coeffs(n * k);
  std::vector<Sym2> metric(n);
  for (Index c = 0; c < n; ++c) {
    const auto [i, j] = mesh.cell_ij(c);
    const Index left_face = mesh.cell(i + mesh.n_x() - 1, j);
    const Index bottom_face = n + mesh.cell(i, j + mesh.n_y() - 1);
    const double sg = mesh.sqrt_g(c);
    for (Index t = 0; t < k; ++t) {
      coeffs[c * k + t] = Vec2{(weights[c * k + t] + weights[left_face * k + t]) / (2.0 * sg * mesh.dy()),
                               (weights[(n + c) * k + t] + weights[bottom_face * k + t]) / (2.0 * sg * mesh.dx())};
    }
    metric[c] = mesh.g(c);
  }
  std::vector<Potential> potentials;
  for (const auto& term : psi) potentials.push_back(term.potential);
  return FluxField(mesh.complex(), 2, std::move(potentials), std::move(weights), std::move(coeffs), std::move(metric),
                   growth_range);
}

std::vector<double> verify_geometry_compatible(const CellComplex& mesh, const FluxField& flux,
                                               std::span<const double> samples) {
  if (flux.mesh_id() != mesh.mesh_id()) throw DomainError("verify_geometry_compatible: flux belongs to another mesh");
  std::vector<double> report;
  report.reserve(samples.size());
  for (double u : samples) {
    const auto edge = flux.edge_fluxes(u);
    const auto div = discrete_divergence(mesh, edge);
    double m = 0.0;
    for (double d : div) m = std::max(m, std::abs(d));
    report.push_back(m);
  }
  return report;
}

EntropyPair kruzkov_pair(const FluxField& flux, double k) {
  EntropyPair pair;
  pair.u_fn = [k](double u) { return std::abs(u - k); };
  pair.flux_fn = [&flux, k](Index cell, double u) {
    const double s = u > k ? 1.0 : (u < k ? -1.0 : 0.0);
    const Vec2 fu = flux.eval(cell, u);
    const Vec2 fk = flux.eval(cell, k);
    return Vec2{s * (fu.x - fk.x), s * (fu.y - fk.y)};
  };
  return pair;
}

double kruzkov_edge_flux(const FluxField& flux, Index e, double u, double k) noexcept {
  if (u == k) return 0.0;
  const double diff = flux.edge_flux(e, u) - flux.edge_flux(e, k);
  return u > k ? diff : -diff;
}

Vec2 quadrature_entropy_flux(const FluxField& flux, const ConvexEntropy& entropy, Index cell, double u) {
  if (u == 0.0) return {};
  constexpr double kTol = 1e-10;
  Vec2 out;
  for (int comp = 0; comp < flux.dim(); ++comp) {
    auto integrand = [&](double s) {
      const Vec2 d = flux.deriv(cell, s);
      return entropy.deriv(s) * (comp == 0 ? d.x : d.y);
    };
    double error = 0.0;
    double l1 = 0.0;
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, 0.0, u, 15, 1e-12, &error, &l1);
    if (!(error <= kTol * std::max(1.0, l1)) || !std::isfinite(value))
      throw NumericalError(fmt::format("quadrature_entropy_flux: no convergence at cell {}, u = {} (error {:.3g})",
                                       cell, u, error));
    (comp == 0 ? out.x : out.y) = value;
  }
  return out;
}

}  // namespace mcl
