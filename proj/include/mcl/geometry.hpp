#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace mcl {

using Index = std::size_t;

/// Symmetric 2x2 tensor (covariant metric components at a cell).
struct Sym2 {
  double xx = 1.0;
  double xy = 0.0;
  double yy = 1.0;

  double det() const noexcept { return xx * yy - xy * xy; }
  bool positive_definite() const noexcept { return xx > 0.0 && det() > 0.0; }
};

/// Periodic finite-volume connectivity shared by the 1-D and 2-D meshes.
///
/// Every edge is oriented in the positive coordinate direction: it leaves
/// cell `left(e)` and enters cell `right(e)`. The outward edge flux of a
/// cell is therefore +F_e for edges where it is the left cell and -F_e where
/// it is the right cell.
class CellComplex {
 public:
  CellComplex() = default;
  CellComplex(std::vector<double> volumes, std::vector<std::pair<Index, Index>> edges,
              std::uint64_t mesh_id);

  Index n_cells() const noexcept { return volumes_.size(); }
  Index n_edges() const noexcept { return edges_.size(); }
  double volume(Index cell) const { return volumes_.at(cell); }
  std::span<const double> volumes() const noexcept { return volumes_; }
  Index left(Index edge) const noexcept { return edges_[edge].first; }
  Index right(Index edge) const noexcept { return edges_[edge].second; }
  std::uint64_t mesh_id() const noexcept { return mesh_id_; }
  double total_volume() const noexcept;

  /// Edges incident to each cell, in ascending edge order.
  std::span<const Index> cell_edges(Index cell) const noexcept;

 private:
  std::vector<double> volumes_;
  std::vector<std::pair<Index, Index>> edges_;
  std::vector<Index> incidence_offsets_;
  std::vector<Index> incidence_;
  std::uint64_t mesh_id_ = 0;
};

/// Circle [0, L) with metric g = (sqrt_g)^2 dx^2 sampled at cell centers.
class Metric1D {
 public:
  Metric1D(std::vector<double> sqrt_g, double length);

  Index n_cells() const noexcept { return sqrt_g_.size(); }
  Index n_edges() const noexcept { return sqrt_g_.size(); }
  double length() const noexcept { return length_; }
  double dx() const noexcept { return length_ / static_cast<double>(sqrt_g_.size()); }
  double sqrt_g(Index i) const { return sqrt_g_.at(i); }
  std::span<const double> sqrt_g() const noexcept { return sqrt_g_; }
  double center(Index i) const noexcept { return (static_cast<double>(i) + 0.5) * dx(); }

  /// Edge e is the right face of cell e, at x = (e+1) dx.
  double edge_position(Index e) const noexcept { return static_cast<double>(e + 1) * dx(); }
  double edge_sqrt_g(Index e) const noexcept;

  const CellComplex& complex() const noexcept { return complex_; }
  std::uint64_t mesh_id() const noexcept { return complex_.mesh_id(); }

 private:
  std::vector<double> sqrt_g_;
  double length_;
  CellComplex complex_;
};

/// Torus [0, Lx) x [0, Ly) with a symmetric positive-definite metric per cell.
///
/// Cell (i, j) has flat index i + n_x j. Edges [0, n_x n_y) are x-faces (the
/// right face of cell (i, j)); edges [n_x n_y, 2 n_x n_y) are y-faces (the top
/// face of cell (i, j)).
class Metric2D {
 public:
  Metric2D(Index n_x, Index n_y, double length_x, double length_y, std::vector<Sym2> g);

  Index n_x() const noexcept { return n_x_; }
  Index n_y() const noexcept { return n_y_; }
  Index n_cells() const noexcept { return n_x_ * n_y_; }
  Index n_edges() const noexcept { return 2 * n_x_ * n_y_; }
  double length_x() const noexcept { return length_x_; }
  double length_y() const noexcept { return length_y_; }
  double dx() const noexcept { return length_x_ / static_cast<double>(n_x_); }
  double dy() const noexcept { return length_y_ / static_cast<double>(n_y_); }
  Index cell(Index i, Index j) const noexcept { return (i % n_x_) + n_x_ * (j % n_y_); }
  std::pair<Index, Index> cell_ij(Index c) const noexcept { return {c % n_x_, c / n_x_}; }
  const Sym2& g(Index c) const { return g_.at(c); }
  double sqrt_g(Index c) const { return sqrt_g_.at(c); }
  std::span<const double> sqrt_g() const noexcept { return sqrt_g_; }
  std::pair<double, double> center(Index c) const noexcept;

  bool is_x_face(Index e) const noexcept { return e < n_cells(); }
  /// Cell owning edge e as its right (x-face) or top (y-face) side.
  Index edge_owner(Index e) const noexcept { return is_x_face(e) ? e : e - n_cells(); }
  /// Corner endpoints (i, j) of an edge, in the order (start, end) along +y
  /// for x-faces and +x for y-faces.
  std::pair<std::pair<Index, Index>, std::pair<Index, Index>> edge_corners(Index e) const noexcept;

  const CellComplex& complex() const noexcept { return complex_; }
  std::uint64_t mesh_id() const noexcept { return complex_.mesh_id(); }

 private:
  Index n_x_;
  Index n_y_;
  double length_x_;
  double length_y_;
  std::vector<Sym2> g_;
  std::vector<double> sqrt_g_;
  CellComplex complex_;
};

/// Cell averages of a scalar unknown, bound to one mesh.
class CellField {
 public:
  CellField() = default;
  CellField(std::vector<double> values, std::uint64_t mesh_id);

  Index size() const noexcept { return values_.size(); }
  double operator[](Index i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  std::uint64_t mesh_id() const noexcept { return mesh_id_; }

 private:
  std::vector<double> values_;
  std::uint64_t mesh_id_ = 0;
};

Metric1D build_circle_mesh(Index n_cells, double length,
                           const std::function<double(double)>& sqrt_g_fn);

Metric2D build_torus_mesh(Index n_x, Index n_y, double length_x, double length_y,
                          const std::function<Sym2(double, double)>& g_fn);

double cell_volume(const Metric1D& mesh, Index i);
double cell_volume(const Metric2D& mesh, Index i);

/// Per-cell (outgoing - incoming edge flux) / cell volume. Edge fluxes are
/// integrated normal fluxes through each edge (already metric weighted).
std::vector<double> discrete_divergence(const CellComplex& mesh, std::span<const double> edge_fluxes);
std::vector<double> discrete_divergence(const Metric1D& mesh, std::span<const double> edge_fluxes);
std::vector<double> discrete_divergence(const Metric2D& mesh, std::span<const double> edge_fluxes);

}  // namespace mcl
