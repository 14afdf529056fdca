#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mcl/geometry.hpp"

namespace mcl {

/// Contravariant vector at a cell; y is zero on 1-D meshes.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Scalar polynomial potential phi(u) = c1 u + c2 u^2/2 + c3 u^3/3.
///
/// Polynomials keep extrema of phi and phi' on an interval computable in
/// closed form, which the monotone fluxes need.
class Potential {
 public:
  Potential() = default;
  Potential(double c1, double c2, double c3) : c_{c1, c2, c3} {}

  static Potential linear(double speed) { return {speed, 0.0, 0.0}; }
  static Potential burgers() { return {0.0, 1.0, 0.0}; }

  double value(double u) const noexcept { return u * (c_[0] + u * (c_[1] / 2.0 + u * c_[2] / 3.0)); }
  double deriv(double u) const noexcept { return c_[0] + u * (c_[1] + u * c_[2]); }
  double second(double u) const noexcept { return c_[1] + 2.0 * u * c_[2]; }

  /// max |phi'| over [lo, hi].
  double max_abs_deriv(double lo, double hi) const noexcept;
  /// min phi' over [lo, hi].
  double min_deriv(double lo, double hi) const noexcept;
  /// min and max of phi over [lo, hi].
  std::array<double, 2> value_range(double lo, double hi) const noexcept;

  const std::array<double, 3>& coefficients() const noexcept { return c_; }

 private:
  std::array<double, 3> c_{0.0, 0.0, 0.0};
};

struct GrowthBound {
  double c0 = 0.0;
  double c1 = 0.0;
  /// The bound |f|_g <= c0 + c1 |u| is declared for |u| <= range.
  double range = 0.0;
};

/// Parametrized vector field f_x(u) on a mesh, stored in separable form
///
///   integrated normal flux through edge e:  F_e(u) = sum_k W[e][k] phi_k(u)
///   contravariant components at cell c:     f(c, u) = sum_k C[c][k] phi_k(u)
///
/// Edge fluxes drive the finite-volume update; the cell representation is
/// used for norms, growth bounds and entropy-flux evaluation.
class FluxField {
 public:
  FluxField(const CellComplex& complex, int dim, std::vector<Potential> potentials,
            std::vector<double> edge_weights, std::vector<Vec2> cell_coeffs, std::vector<Sym2> cell_metric,
            double growth_range);

  int dim() const noexcept { return dim_; }
  std::uint64_t mesh_id() const noexcept { return mesh_id_; }
  Index n_cells() const noexcept { return n_cells_; }
  Index n_edges() const noexcept { return n_edges_; }
  Index n_terms() const noexcept { return potentials_.size(); }
  const Potential& potential(Index k) const { return potentials_.at(k); }
  double edge_weight(Index e, Index k) const noexcept { return edge_weights_[e * potentials_.size() + k]; }

  Vec2 eval(Index cell, double u) const;
  Vec2 deriv(Index cell, double u) const;
  double norm_g(Index cell, Vec2 v) const;

  double edge_flux(Index e, double u) const noexcept;
  double edge_deriv(Index e, double u) const noexcept;
  /// Upper bound of |dF_e/du| over [lo, hi]; exact for single-term fields.
  double edge_max_speed(Index e, double lo, double hi) const noexcept;
  /// Exact scalar Riemann (Godunov) edge flux. Single-term fields only.
  double edge_godunov(Index e, double u_left, double u_right) const;

  std::vector<double> edge_fluxes(double u) const;
  const GrowthBound& growth_bound() const noexcept { return growth_; }

 private:
  int dim_;
  std::uint64_t mesh_id_;
  Index n_cells_;
  Index n_edges_;
  std::vector<Potential> potentials_;
  std::vector<double> edge_weights_;
  std::vector<Vec2> cell_coeffs_;
  std::vector<Sym2> cell_metric_;
  GrowthBound growth_;
};

/// One term of a stream function psi(corner, u) = A(corner) phi(u). Corner
/// (i, j) sits at (i dx, j dy); corner_values has n_x n_y entries with
/// periodic identification, index i + n_x j.
struct StreamTerm {
  std::vector<double> corner_values;
  Potential potential;
};

/// Samples a function of position at the periodic corners of a torus mesh.
std::vector<double> sample_corners(const Metric2D& mesh, const std::function<double(double, double)>& fn);

inline constexpr double kDefaultGrowthRange = 10.0;

/// f(x, u) = phi(u) / sqrt_g(x); sqrt_g f is x-independent, so the edge flux
/// is phi(u) on every edge and the discrete divergence vanishes identically.
FluxField flux_from_potential_1d(const Metric1D& mesh, const Potential& phi,
                                 double growth_range = kDefaultGrowthRange);

/// Burgers flux u^2/2 written as a potential flux.
FluxField burgers_1d(const Metric1D& mesh, double growth_range = kDefaultGrowthRange);

/// f(x, u) = b(x) phi(u) with an arbitrary coefficient b; in general not
/// geometry compatible.
FluxField flux_from_field_1d(const Metric1D& mesh, const std::function<double(double)>& b, const Potential& phi,
                             double growth_range = kDefaultGrowthRange);

/// f = (1/sqrt_g) (d_y psi, -d_x psi) with corner differences (mimetic curl).
FluxField flux_from_stream_2d(const Metric2D& mesh, const std::vector<StreamTerm>& psi,
                              double growth_range = kDefaultGrowthRange);

/// Max over cells of |discrete divergence of f(., u)|, one entry per sample.
std::vector<double> verify_geometry_compatible(const CellComplex& mesh, const FluxField& flux,
                                               std::span<const double> samples);

/// Convex entropy U with derivative, used by the quadrature entropy flux.
struct ConvexEntropy {
  std::function<double(double)> value;
  std::function<double(double)> deriv;
};

struct EntropyPair {
  std::function<double(double)> u_fn;
  std::function<Vec2(Index, double)> flux_fn;
};

/// U(u) = |u - k|, F(x, u) = sgn(u - k) (f(x, u) - f(x, k)).
EntropyPair kruzkov_pair(const FluxField& flux, double k);

/// Kruzkov entropy flux integrated through edge e.
double kruzkov_edge_flux(const FluxField& flux, Index e, double u, double k) noexcept;

/// int_0^u U'(s) d_s f(cell, s) ds by adaptive Gauss-Kronrod quadrature
/// (tolerance 1e-10 relative to max(1, int |integrand|)). Throws NumericalError if the error estimate
/// does not reach the tolerance.
Vec2 quadrature_entropy_flux(const FluxField& flux, const ConvexEntropy& entropy, Index cell, double u);

}  // namespace mcl
