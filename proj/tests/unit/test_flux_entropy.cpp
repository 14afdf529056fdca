#include <cmath>
#include <numbers>

#include <doctest.h>

#include "mcl/error.hpp"
#include "mcl/flux_entropy.hpp"
#include "support/random.hpp"

using namespace mcl;

namespace {

Metric1D curved_circle(Index n) {
  return build_circle_mesh(n, 2.0 * std::numbers::pi, [](double x) { return 2.0 + std::sin(x); });
}

Metric2D curved_torus(Index n) {
  return build_torus_mesh(n, n, 1.0, 1.0, [](double x, double y) {
    const double two_pi = 2.0 * std::numbers::pi;
    return Sym2{1.5 + 0.5 * std::sin(two_pi * x), 0.2 * std::cos(two_pi * y), 1.0 + 0.3 * std::cos(two_pi * (x + y))};
  });
}

FluxField random_stream_flux(const Metric2D& mesh) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double p1 = testing::uniform(0.0, two_pi);
  const double p2 = testing::uniform(0.0, two_pi);
  StreamTerm linear{sample_corners(mesh, [&](double x, double y) { return std::sin(two_pi * x + p1) * std::cos(two_pi * y); }),
                    Potential::linear(1.0)};
  StreamTerm burgers{sample_corners(mesh, [&](double x, double y) { return std::cos(two_pi * (x - y) + p2); }),
                     Potential::burgers()};
  return flux_from_stream_2d(mesh, {linear, burgers});
}

}  // namespace

TEST_CASE("polynomial potentials: closed-form extrema") {
  const Potential cubic(0.5, -1.0, 1.0);  // phi' = 0.5 - u + u^2 > 0
  for (int trial = 0; trial < 200; ++trial) {
    double lo = testing::uniform(-3.0, 3.0);
    double hi = testing::uniform(-3.0, 3.0);
    if (lo > hi) std::swap(lo, hi);
    double max_d = 0.0;
    double min_d = INFINITY;
    double vmin = INFINITY;
    double vmax = -INFINITY;
    for (int k = 0; k <= 2000; ++k) {
      const double u = lo + (hi - lo) * k / 2000.0;
      max_d = std::max(max_d, std::abs(cubic.deriv(u)));
      min_d = std::min(min_d, cubic.deriv(u));
      vmin = std::min(vmin, cubic.value(u));
      vmax = std::max(vmax, cubic.value(u));
    }
    CHECK(cubic.max_abs_deriv(lo, hi) >= max_d - 1e-12);
    CHECK(cubic.max_abs_deriv(lo, hi) <= max_d + 1e-5);
    CHECK(cubic.min_deriv(lo, hi) <= min_d + 1e-12);
    CHECK(cubic.min_deriv(lo, hi) >= min_d - 1e-5);
    const auto range = cubic.value_range(lo, hi);
    CHECK(range[0] <= vmin + 1e-12);
    CHECK(range[1] >= vmax - 1e-12);
  }
}

TEST_CASE("potential flux on the flat circle is Burgers") {
  const auto mesh = build_circle_mesh(16, 1.0, [](double) { return 1.0; });
  const auto f = burgers_1d(mesh);
  CHECK(f.eval(3, 2.0).x == doctest::Approx(2.0));
  CHECK(f.edge_flux(5, -1.0) == doctest::Approx(0.5));
  const auto zero = flux_from_potential_1d(mesh, Potential{});
  CHECK(zero.eval(0, 7.0).x == 0.0);
}

TEST_CASE("potential flux on a curved circle: f = phi / sqrt_g and zero divergence") {
  const auto mesh = curved_circle(32);
  const auto f = flux_from_potential_1d(mesh, Potential::linear(1.0));
  for (Index i = 0; i < mesh.n_cells(); ++i)
    CHECK(f.eval(i, 0.7).x == doctest::Approx(0.7 / (2.0 + std::sin(mesh.center(i)))));
  const auto samples = testing::uniform_vector(20, -5.0, 5.0);
  for (double r : verify_geometry_compatible(mesh.complex(), f, samples)) CHECK(r <= 1e-12);
  const auto cubic = flux_from_potential_1d(mesh, Potential(0.3, 1.0, -0.5));
  for (double r : verify_geometry_compatible(mesh.complex(), cubic, samples)) CHECK(r <= 1e-12);
}

TEST_CASE("non-compatible flux is detected") {
  const auto mesh = build_circle_mesh(32, 1.0, [](double) { return 1.0; });
  const auto f = flux_from_field_1d(mesh, [](double x) { return x; }, Potential::linear(1.0));
  const std::vector<double> samples{0.5, 1.0, 2.0};
  const auto report = verify_geometry_compatible(mesh.complex(), f, samples);
  // Interior cells have div(x u) = u exactly; the seam cell carries the jump.
  for (std::size_t k = 0; k < samples.size(); ++k) CHECK(report[k] >= samples[k] - 1e-12);
  const auto zero = flux_from_potential_1d(mesh, Potential{});
  for (double r : verify_geometry_compatible(mesh.complex(), zero, samples)) CHECK(r == 0.0);
}

TEST_CASE("stream-function flux") {
  const auto flat = build_torus_mesh(8, 8, 1.0, 1.0, [](double, double) { return Sym2{}; });

  SUBCASE("position-independent psi gives zero flux") {
    const auto f = flux_from_stream_2d(flat, {StreamTerm{std::vector<double>(64, 2.5), Potential::burgers()}});
    for (Index c = 0; c < flat.n_cells(); ++c) {
      CHECK(f.eval(c, 1.3).x == 0.0);
      CHECK(f.eval(c, 1.3).y == 0.0);
    }
  }

  SUBCASE("psi = u y gives f = (u, 0) away from the seam row") {
    const auto f = flux_from_stream_2d(
        flat, {StreamTerm{sample_corners(flat, [](double, double y) { return y; }), Potential::linear(1.0)}});
    for (Index c = 0; c < flat.n_cells(); ++c) {
      const auto [i, j] = flat.cell_ij(c);
      const Vec2 v = f.eval(c, 0.8);
      CHECK(std::abs(v.y) < 1e-14);
      if (j < flat.n_y() - 1) CHECK(v.x == doctest::Approx(0.8));
      (void)i;
    }
  }

  SUBCASE("random smooth psi on a curved torus is divergence free") {
    const auto mesh = curved_torus(16);
    for (int trial = 0; trial < 3; ++trial) {
      const auto f = random_stream_flux(mesh);
      for (double r : verify_geometry_compatible(mesh.complex(), f, testing::uniform_vector(10, -3.0, 3.0)))
        CHECK(r <= 1e-12);
    }
  }

  SUBCASE("wrong corner count is rejected") {
    CHECK_THROWS_AS(flux_from_stream_2d(flat, {StreamTerm{std::vector<double>(63, 0.0), Potential::linear(1.0)}}),
                    DomainError);
  }
}

TEST_CASE("deriv agrees with a central difference of eval") {
  const auto mesh = curved_torus(8);
  const auto f = random_stream_flux(mesh);
  const auto f1 = flux_from_potential_1d(curved_circle(16), Potential(0.3, 1.0, -0.5));
  for (int trial = 0; trial < 100; ++trial) {
    const double u = testing::uniform(-2.0, 2.0);
    const double h = 1e-5;
    const Index c = static_cast<Index>(testing::uniform(0.0, 63.99));
    const Vec2 d = f.deriv(c, u);
    const Vec2 fp = f.eval(c, u + h);
    const Vec2 fm = f.eval(c, u - h);
    CHECK(std::abs((fp.x - fm.x) / (2 * h) - d.x) <= 1e-6 * std::max(1.0, std::abs(d.x)));
    CHECK(std::abs((fp.y - fm.y) / (2 * h) - d.y) <= 1e-6 * std::max(1.0, std::abs(d.y)));
    const Index c1 = c % 16;
    const double d1 = f1.deriv(c1, u).x;
    CHECK(std::abs((f1.eval(c1, u + h).x - f1.eval(c1, u - h).x) / (2 * h) - d1) <= 1e-6 * std::max(1.0, std::abs(d1)));
  }
}

TEST_CASE("declared growth bound holds for built-in families") {
  const auto circle = curved_circle(32);
  const auto torus = curved_torus(8);
  const FluxField fields[] = {burgers_1d(circle), flux_from_potential_1d(circle, Potential(0.3, 1.0, -0.5)),
                              flux_from_field_1d(circle, [](double x) { return 1.0 + 0.5 * std::sin(x); },
                                                 Potential::burgers()),
                              random_stream_flux(torus)};
  for (const auto& f : fields) {
    const auto& g = f.growth_bound();
    CHECK(g.range > 0.0);
    for (int trial = 0; trial < 500; ++trial) {
      const double u = testing::uniform(-g.range, g.range);
      const Index c = static_cast<Index>(testing::uniform(0.0, static_cast<double>(f.n_cells()) - 0.01));
      CHECK(f.norm_g(c, f.eval(c, u)) <= g.c0 + g.c1 * std::abs(u) + 1e-12);
    }
  }
}

TEST_CASE("Kruzkov pair") {
  const auto mesh = build_circle_mesh(8, 1.0, [](double) { return 1.0; });
  const auto f = burgers_1d(mesh);
  const auto pair = kruzkov_pair(f, 0.0);
  CHECK(pair.u_fn(2.0) == 2.0);
  CHECK(pair.flux_fn(0, 2.0).x == doctest::Approx(2.0));
  const auto at_k = kruzkov_pair(f, 1.5);
  CHECK(at_k.u_fn(1.5) == 0.0);
  CHECK(at_k.flux_fn(3, 1.5).x == 0.0);
  CHECK(at_k.flux_fn(3, 0.5).x == doctest::Approx(-(0.125 - 1.125)));
  CHECK(kruzkov_edge_flux(f, 2, 0.5, 1.5) == doctest::Approx(1.0));

  // Convexity by the midpoint inequality.
  for (int trial = 0; trial < 200; ++trial) {
    const double a = testing::uniform(-5, 5);
    const double b = testing::uniform(-5, 5);
    CHECK(at_k.u_fn(0.5 * (a + b)) <= 0.5 * (at_k.u_fn(a) + at_k.u_fn(b)) + 1e-15);
  }
}

TEST_CASE("Kruzkov entropy flux equals the defining integral") {
  const auto mesh = curved_circle(16);
  const auto f = flux_from_potential_1d(mesh, Potential(0.3, 1.0, -0.5));
  const double k = 0.4;
  const auto pair = kruzkov_pair(f, k);
  // int_k^u sgn(s - k) f'(s) ds by the composite Simpson rule; sgn is constant on the path.
  for (int trial = 0; trial < 50; ++trial) {
    const double u = testing::uniform(-2.0, 2.0);
    const Index c = static_cast<Index>(testing::uniform(0.0, 15.99));
    const int m = 2000;
    const double h = (u - k) / m;
    double sum = 0.0;
    for (int j = 0; j <= m; ++j) {
      const double s = k + j * h;
      const double w = (j == 0 || j == m) ? 1.0 : (j % 2 ? 4.0 : 2.0);
      sum += w * (u > k ? 1.0 : -1.0) * f.deriv(c, s).x;
    }
    sum *= h / 3.0;
    CHECK(std::abs(pair.flux_fn(c, u).x - sum) <= 1e-8);
  }
}

TEST_CASE("quadrature entropy flux") {
  const auto flat = build_circle_mesh(8, 1.0, [](double) { return 1.0; });
  const auto lin = flux_from_potential_1d(flat, Potential::linear(1.0));
  const ConvexEntropy identity{[](double u) { return u; }, [](double) { return 1.0; }};
  const ConvexEntropy half_square{[](double u) { return 0.5 * u * u; }, [](double u) { return u; }};
  CHECK(quadrature_entropy_flux(lin, half_square, 2, 1.7).x == doctest::Approx(0.5 * 1.7 * 1.7));
  CHECK(quadrature_entropy_flux(lin, half_square, 2, 0.0).x == 0.0);

  const auto mesh = curved_torus(8);
  const auto f = random_stream_flux(mesh);
  for (int trial = 0; trial < 20; ++trial) {
    const double u = testing::uniform(-2.0, 2.0);
    const Index c = static_cast<Index>(testing::uniform(0.0, 63.99));
    const Vec2 q = quadrature_entropy_flux(f, identity, c, u);
    const Vec2 fu = f.eval(c, u);
    const Vec2 f0 = f.eval(c, 0.0);
    CHECK(std::abs(q.x - (fu.x - f0.x)) <= 1e-10);
    CHECK(std::abs(q.y - (fu.y - f0.y)) <= 1e-10);
  }
}

TEST_CASE("mollified Kruzkov entropies converge to the closed form") {
  // U_eps(u) = sqrt((u - k)^2 + eps^2) - eps. Differences of the quadrature
  // entropy flux F_eps(u) - F_eps(k) approach sgn(u - k)(f(u) - f(k)) as O(eps).
  const auto mesh = curved_circle(16);
  const auto f = flux_from_potential_1d(mesh, Potential(0.3, 1.0, -0.5));
  const double k = 0.25;
  const auto pair = kruzkov_pair(f, k);
  double prev = INFINITY;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    const ConvexEntropy smooth{[=](double u) { return std::sqrt((u - k) * (u - k) + eps * eps) - eps; },
                               [=](double u) { return (u - k) / std::sqrt((u - k) * (u - k) + eps * eps); }};
    double worst = 0.0;
    for (double u : {-1.5, -0.3, 0.9, 1.8}) {
      for (Index c : {0u, 5u, 11u}) {
        const double q = quadrature_entropy_flux(f, smooth, c, u).x - quadrature_entropy_flux(f, smooth, c, k).x;
        worst = std::max(worst, std::abs(q - pair.flux_fn(c, u).x));
      }
    }
    CHECK(worst <= 5.0 * eps);
    CHECK(worst < prev);
    prev = worst;
  }
}
