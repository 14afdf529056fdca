#include "mcl/geometry.hpp"

#include <atomic>
#include <cmath>

#include <fmt/format.h>

#include "mcl/error.hpp"

namespace mcl {

namespace {

std::uint64_t next_mesh_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

}  // namespace

CellComplex::CellComplex(std::vector<double> volumes, std::vector<std::pair<Index, Index>> edges,
                         std::uint64_t mesh_id)
    : volumes_(std::move(volumes)), edges_(std::move(edges)), mesh_id_(mesh_id) {
  const Index n = volumes_.size();
  std::vector<Index> counts(n, 0);
  for (const auto& [l, r] : edges_) {
    if (l >= n || r >= n) throw DomainError("CellComplex: edge references a missing cell");
    ++counts[l];
    ++counts[r];
  }
  incidence_offsets_.assign(n + 1, 0);
  for (Index i = 0; i < n; ++i) incidence_offsets_[i + 1] = incidence_offsets_[i] + counts[i];
  incidence_.assign(incidence_offsets_[n], 0);
  std::vector<Index> fill(incidence_offsets_.begin(), incidence_offsets_.end() - 1);
  for (Index e = 0; e < edges_.size(); ++e) {
    incidence_[fill[edges_[e].first]++] = e;
    incidence_[fill[edges_[e].second]++] = e;
  }
}

double CellComplex::total_volume() const noexcept {
  double sum = 0.0;
  for (double v : volumes_) sum += v;
  return sum;
}

std::span<const Index> CellComplex::cell_edges(Index cell) const noexcept {
  return std::span<const Index>(incidence_).subspan(
      incidence_offsets_[cell], incidence_offsets_[cell + 1] - incidence_offsets_[cell]);
}

Metric1D::Metric1D(std::vector<double> sqrt_g, double length)
    : sqrt_g_(std::move(sqrt_g)), length_(length) {
  const Index n = sqrt_g_.size();
  if (n < 4) throw DomainError(fmt::format("Metric1D: need at least 4 cells, got {}", n));
  if (!(length_ > 0.0) || !std::isfinite(length_))
    throw DomainError(fmt::format("Metric1D: length must be positive, got {}", length_));
  for (Index i = 0; i < n; ++i) {
    if (!(sqrt_g_[i] > 0.0) || !std::isfinite(sqrt_g_[i]))
      throw DomainError(fmt::format("Metric1D: sqrt_g must be positive, cell {} has {}", i, sqrt_g_[i]));
  }
  std::vector<double> volumes(n);
  std::vector<std::pair<Index, Index>> edges(n);
  for (Index i = 0; i < n; ++i) {
    volumes[i] = sqrt_g_[i] * dx();
    edges[i] = {i, (i + 1) % n};
  }
  complex_ = CellComplex(std::move(volumes), std::move(edges), next_mesh_id());
}

double Metric1D::edge_sqrt_g(Index e) const noexcept {
  return 0.5 * (sqrt_g_[e] + sqrt_g_[(e + 1) % sqrt_g_.size()]);
}

Metric2D::Metric2D(Index n_x, Index n_y, double length_x, double length_y, std::vector<Sym2> g)
    : n_x_(n_x), n_y_(n_y), length_x_(length_x), length_y_(length_y), g_(std::move(g)) {
  if (n_x_ < 4 || n_y_ < 4)
    throw DomainError(fmt::format("Metric2D: need at least 4x4 cells, got {}x{}", n_x_, n_y_));
  if (!(length_x_ > 0.0) || !(length_y_ > 0.0))
    throw DomainError("Metric2D: periods must be positive");
  if (g_.size() != n_x_ * n_y_)
    throw DomainError(fmt::format("Metric2D: expected {} metric samples, got {}", n_x_ * n_y_, g_.size()));
  const Index n = n_cells();
  sqrt_g_.resize(n);
  std::vector<double> volumes(n);
  for (Index c = 0; c < n; ++c) {
    if (!g_[c].positive_definite() || !std::isfinite(g_[c].det())) {
      auto [i, j] = cell_ij(c);
      throw DomainError(fmt::format("Metric2D: metric not positive definite at cell ({}, {})", i, j));
    }
    sqrt_g_[c] = std::sqrt(g_[c].det());
    volumes[c] = sqrt_g_[c] * dx() * dy();
  }
  std::vector<std::pair<Index, Index>> edges(2 * n);
  for (Index j = 0; j < n_y_; ++j) {
    for (Index i = 0; i < n_x_; ++i) {
      const Index c = cell(i, j);
      edges[c] = {c, cell(i + 1, j)};
      edges[n + c] = {c, cell(i, j + 1)};
    }
  }
  complex_ = CellComplex(std::move(volumes), std::move(edges), next_mesh_id());
}

std::pair<double, double> Metric2D::center(Index c) const noexcept {
  auto [i, j] = cell_ij(c);
  return {(static_cast<double>(i) + 0.5) * dx(), (static_cast<double>(j) + 0.5) * dy()};
}

std::pair<std::pair<Index, Index>, std::pair<Index, Index>> Metric2D::edge_corners(Index e) const noexcept {
  auto [i, j] = cell_ij(edge_owner(e));
  if (is_x_face(e)) return {{i + 1, j}, {i + 1, j + 1}};
  return {{i, j + 1}, {i + 1, j + 1}};
}

CellField::CellField(std::vector<double> values, std::uint64_t mesh_id)
    : values_(std::move(values)), mesh_id_(mesh_id) {
  for (Index i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]))
      throw DomainError(fmt::format("CellField: non-finite value {} in cell {}", values_[i], i));
  }
}

Metric1D build_circle_mesh(Index n_cells, double length, const std::function<double(double)>& sqrt_g_fn) {
  if (n_cells < 4) throw DomainError(fmt::format("build_circle_mesh: n_cells must be >= 4, got {}", n_cells));
  if (!(length > 0.0)) throw DomainError(fmt::format("build_circle_mesh: length must be > 0, got {}", length));
  const double dx = length / static_cast<double>(n_cells);
  std::vector<double> sqrt_g(n_cells);
  for (Index i = 0; i < n_cells; ++i) {
    const double x = (static_cast<double>(i) + 0.5) * dx;
    sqrt_g[i] = sqrt_g_fn(x);
    if (!(sqrt_g[i] > 0.0) || !std::isfinite(sqrt_g[i]))
      throw DomainError(fmt::format("build_circle_mesh: sqrt_g({}) = {} is not positive at cell {}", x, sqrt_g[i], i));
  }
  return Metric1D(std::move(sqrt_g), length);
}

Metric2D build_torus_mesh(Index n_x, Index n_y, double length_x, double length_y,
                          const std::function<Sym2(double, double)>& g_fn) {
  if (n_x < 4 || n_y < 4)
    throw DomainError(fmt::format("build_torus_mesh: need at least 4x4 cells, got {}x{}", n_x, n_y));
  const double dx = length_x / static_cast<double>(n_x);
  const double dy = length_y / static_cast<double>(n_y);
  std::vector<Sym2> g(n_x * n_y);
  for (Index j = 0; j < n_y; ++j) {
    for (Index i = 0; i < n_x; ++i) {
      g[i + n_x * j] = g_fn((static_cast<double>(i) + 0.5) * dx, (static_cast<double>(j) + 0.5) * dy);
    }
  }
  return Metric2D(n_x, n_y, length_x, length_y, std::move(g));
}

double cell_volume(const Metric1D& mesh, Index i) {
  if (i >= mesh.n_cells())
    throw DomainError(fmt::format("cell_volume: index {} out of range [0, {})", i, mesh.n_cells()));
  return mesh.complex().volume(i);
}

double cell_volume(const Metric2D& mesh, Index i) {
  if (i >= mesh.n_cells())
    throw DomainError(fmt::format("cell_volume: index {} out of range [0, {})", i, mesh.n_cells()));
  return mesh.complex().volume(i);
}

std::vector<double> discrete_divergence(const CellComplex& mesh, std::span<const double> edge_fluxes) {
  if (edge_fluxes.size() != mesh.n_edges())
    throw DomainError(fmt::format("discrete_divergence: expected {} edge fluxes, got {}", mesh.n_edges(),
                                  edge_fluxes.size()));
  std::vector<double> div(mesh.n_cells(), 0.0);
  for (Index e = 0; e < mesh.n_edges(); ++e) {
    div[mesh.left(e)] += edge_fluxes[e];
    div[mesh.right(e)] -= edge_fluxes[e];
  }
  for (Index i = 0; i < div.size(); ++i) div[i] /= mesh.volume(i);
  return div;
}

std::vector<double> discrete_divergence(const Metric1D& mesh, std::span<const double> edge_fluxes) {
  return discrete_divergence(mesh.complex(), edge_fluxes);
}

std::vector<double> discrete_divergence(const Metric2D& mesh, std::span<const double> edge_fluxes) {
  return discrete_divergence(mesh.complex(), edge_fluxes);
}

}  // namespace mcl
