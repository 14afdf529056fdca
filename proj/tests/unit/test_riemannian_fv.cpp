#include <algorithm>
#include <cmath>
#include <numbers>

#include <doctest.h>

#include "mcl/error.hpp"
#include "mcl/riemannian_fv.hpp"
#include "support/random.hpp"

using namespace mcl;

namespace {

Metric1D flat_circle(Index n, double length = 1.0) {
  return build_circle_mesh(n, length, [](double) { return 1.0; });
}

Metric1D curved_circle(Index n) {
  return build_circle_mesh(n, 2.0 * std::numbers::pi, [](double x) { return 2.0 + std::sin(x); });
}

CellField sample(const Metric1D& mesh, const std::function<double(double)>& fn) {
  std::vector<double> v(mesh.n_cells());
  for (Index i = 0; i < mesh.n_cells(); ++i) v[i] = fn(mesh.center(i));
  return {v, mesh.mesh_id()};
}

CellField step_data(const Metric1D& mesh, double left, double right) {
  const double half = 0.5 * mesh.n_cells() * mesh.dx();
  return sample(mesh, [=](double x) { return x < half ? left : right; });
}

// u(t, x) = u0(x - t u) for Burgers, by fixed-point iteration.
double characteristics(const std::function<double(double)>& u0, double t, double x) {
  double u = u0(x);
  for (int it = 0; it < 200; ++it) {
    const double next = u0(x - t * u);
    if (std::abs(next - u) < 1e-15) return next;
    u = next;
  }
  return u;
}

}  // namespace

TEST_CASE("config validation and flux names") {
  FvConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.cfl = 0.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.cfl = 1.5;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = FvConfig{};
  cfg.record_every = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  CHECK(parse_numerical_flux("godunov_scalar") == NumericalFlux::godunov_scalar);
  CHECK(to_string(NumericalFlux::rusanov) == "rusanov");
  CHECK_THROWS_AS(parse_numerical_flux("roe"), DomainError);
}

TEST_CASE("constant state is stationary on geometry-compatible fluxes") {
  const auto mesh = curved_circle(64);
  for (const auto& f : {burgers_1d(mesh), flux_from_potential_1d(mesh, Potential(0.3, 1.0, -0.5))}) {
    const CellField u(std::vector<double>(64, 0.8), mesh.mesh_id());
    const double dt = 0.9 * max_stable_dt(mesh.complex(), f, u.values());
    for (auto scheme : {NumericalFlux::rusanov, NumericalFlux::godunov_scalar}) {
      const auto next = step(mesh.complex(), u, f, dt, scheme);
      for (Index i = 0; i < 64; ++i) CHECK(next[i] == 0.8);
    }
  }
}

TEST_CASE("Burgers shock moves at the Rankine-Hugoniot speed") {
  const auto mesh = flat_circle(200);
  const auto f = burgers_1d(mesh);
  for (auto scheme : {NumericalFlux::rusanov, NumericalFlux::godunov_scalar}) {
    FvConfig cfg;
    cfg.t_end = 0.5;
    cfg.numerical_flux = scheme;
    const auto res = solve(mesh.complex(), step_data(mesh, 1.0, 0.0), f, cfg);
    CHECK(res.t == doctest::Approx(0.5));
    double front = -1.0;
    for (Index i = 100; i + 1 < 200; ++i)
      if (res.u[i] >= 0.5 && res.u[i + 1] < 0.5) {
        front = mesh.edge_position(i);
        break;
      }
    CHECK(std::abs(front - 0.75) <= mesh.dx());
  }
}

TEST_CASE("Burgers rarefaction respects the maximum principle") {
  const auto mesh = flat_circle(128);
  FvConfig cfg;
  cfg.t_end = 0.4;
  const auto res = solve(mesh.complex(), step_data(mesh, 0.0, 1.0), burgers_1d(mesh), cfg);
  const auto [lo, hi] = std::minmax_element(res.u.values().begin(), res.u.values().end());
  CHECK(*lo >= 0.0);
  CHECK(*hi <= 1.0);
}

TEST_CASE("trivial solves") {
  const auto mesh = curved_circle(32);
  const auto f = burgers_1d(mesh);
  FvConfig cfg;
  cfg.t_end = 1.0;
  const auto zero = solve(mesh.complex(), CellField(std::vector<double>(32, 0.0), mesh.mesh_id()), f, cfg);
  for (Index i = 0; i < 32; ++i) CHECK(zero.u[i] == 0.0);
  for (std::size_t k = 0; k < zero.norms.size(); ++k) {
    CHECK(zero.norms.l1[k] == 0.0);
    CHECK(zero.norms.linf[k] == 0.0);
  }

  cfg.t_end = 0.0;
  const auto u0 = CellField(testing::uniform_vector(32, -1.0, 1.0), mesh.mesh_id());
  const auto same = solve(mesh.complex(), u0, f, cfg);
  CHECK(same.steps == 0);
  for (Index i = 0; i < 32; ++i) CHECK(same.u[i] == u0[i]);
  CHECK(same.norms.size() == 1);
}

TEST_CASE("smooth Burgers converges to the characteristics solution") {
  const auto u0 = [](double x) { return 0.5 + 0.25 * std::sin(2.0 * std::numbers::pi * x); };
  const double t = 0.3;  // shock forms at t = 2/pi
  double errors[3];
  int level = 0;
  for (Index n : {64, 128, 256}) {
    const auto mesh = flat_circle(n);
    FvConfig cfg;
    cfg.t_end = t;
    const auto res = solve(mesh.complex(), sample(mesh, u0), burgers_1d(mesh), cfg);
    double err = 0.0;
    for (Index i = 0; i < n; ++i) err += mesh.dx() * std::abs(res.u[i] - characteristics(u0, t, mesh.center(i)));
    errors[level++] = err;
  }
  CHECK(std::log2(errors[0] / errors[1]) >= 0.7);
  CHECK(std::log2(errors[1] / errors[2]) >= 0.7);
}

TEST_CASE("norms are nonincreasing and mass is conserved") {
  const auto circle = curved_circle(96);
  const auto torus = build_torus_mesh(24, 24, 1.0, 1.0, [](double x, double y) {
    return Sym2{1.2 + 0.3 * std::cos(2.0 * std::numbers::pi * y), 0.1, 1.0 + 0.2 * std::sin(2.0 * std::numbers::pi * x)};
  });
  const StreamTerm psi{sample_corners(torus, [](double x, double y) {
                         return std::sin(2.0 * std::numbers::pi * x) * std::sin(2.0 * std::numbers::pi * y);
                       }),
                       Potential::burgers()};
  struct Case {
    const CellComplex* mesh;
    FluxField flux;
  };
  const Case cases[] = {{&circle.complex(), burgers_1d(circle)},
                        {&circle.complex(), flux_from_potential_1d(circle, Potential(0.3, 1.0, -0.5))},
                        {&circle.complex(), flux_from_potential_1d(circle, Potential::linear(-1.0))},
                        {&torus.complex(), flux_from_stream_2d(torus, {psi})}};
  for (const auto& c : cases) {
    FvConfig cfg;
    cfg.t_end = 1.0;
    const CellField u0(testing::uniform_vector(c.mesh->n_cells(), -1.0, 1.0), c.flux.mesh_id());
    const auto res = solve(*c.mesh, u0, c.flux, cfg);
    const auto& n = res.norms;
    for (std::size_t k = 1; k < n.size(); ++k) {
      CHECK(n.l1[k] <= n.l1[k - 1] + 1e-11);
      CHECK(n.l2[k] <= n.l2[k - 1] + 1e-11);
      CHECK(n.linf[k] <= n.linf[k - 1] + 1e-11);
    }
    CHECK(std::abs(n.mass.back() - n.mass.front()) <= 1e-11 * res.t);
  }
}

TEST_CASE("L1 contraction") {
  const auto mesh = curved_circle(64);
  const auto f = burgers_1d(mesh);
  FvConfig cfg;
  cfg.t_end = 1.0;

  SUBCASE("equal data gives a zero series") {
    const CellField u(testing::uniform_vector(64, -1.0, 1.0), mesh.mesh_id());
    for (double d : contraction_harness(mesh.complex(), u, u, f, cfg).distance) CHECK(d == 0.0);
  }

  SUBCASE("shift by a constant keeps the distance c |M|") {
    const auto small = build_circle_mesh(16, 1.0, [](double x) { return 1.0 + 0.5 * std::cos(2.0 * std::numbers::pi * x); });
    const auto g = burgers_1d(small);
    const auto v = testing::uniform_vector(16, -0.5, 0.5);
    auto u = v;
    for (auto& x : u) x += 0.3;
    const auto series = contraction_harness(small.complex(), CellField(u, small.mesh_id()),
                                            CellField(v, small.mesh_id()), g, cfg);
    for (double d : series.distance) CHECK(d == doctest::Approx(0.3 * small.complex().total_volume()).epsilon(1e-12));
  }

  SUBCASE("random pairs") {
    for (int trial = 0; trial < 5; ++trial) {
      const CellField u(testing::uniform_vector(64, -1.0, 1.0), mesh.mesh_id());
      const CellField v(testing::uniform_vector(64, -1.0, 1.0), mesh.mesh_id());
      const auto s = contraction_harness(mesh.complex(), u, v, f, cfg);
      for (std::size_t k = 1; k < s.distance.size(); ++k) CHECK(s.distance[k] <= s.distance[k - 1] + 1e-11);
    }
  }

  SUBCASE("non-compatible flux still contracts") {
    const auto b = flux_from_field_1d(mesh, [](double x) { return 1.0 + 0.5 * std::sin(x); }, Potential::burgers());
    for (int trial = 0; trial < 5; ++trial) {
      const CellField u(testing::uniform_vector(64, -1.0, 1.0), mesh.mesh_id());
      const CellField v(testing::uniform_vector(64, -1.0, 1.0), mesh.mesh_id());
      const auto s = contraction_harness(mesh.complex(), u, v, b, cfg);
      for (std::size_t k = 1; k < s.distance.size(); ++k) CHECK(s.distance[k] <= s.distance[k - 1] + 1e-11);
    }
  }

  SUBCASE("mesh mismatch") {
    const auto other = curved_circle(64);
    const CellField u(std::vector<double>(64, 0.0), mesh.mesh_id());
    const CellField v(std::vector<double>(64, 0.0), other.mesh_id());
    CHECK_THROWS_AS(contraction_harness(mesh.complex(), u, v, f, cfg), DomainError);
  }
}

TEST_CASE("entropy residual") {
  const auto mesh = flat_circle(8);
  const auto f = burgers_1d(mesh);
  const double dx = mesh.dx();

  SUBCASE("hand-computed shock cell") {
    const auto u = step_data(mesh, 1.0, 0.0);
    const double dt = 0.5 * dx;
    const auto next = step(mesh.complex(), u, f, dt);
    // Rusanov flux across the shock edge: 1/2 (1/2 + 0) + 1/2 (1 - 0) = 3/4.
    CHECK(next[3] == doctest::Approx(1.0 - 0.5 * (0.75 - 0.5)));
    CHECK(next[4] == doctest::Approx(0.375));
    // k = 1/2: q(1) = 3/8, q(0) = 1/8, G(3|4) = 1/4, G(4|5) = 1/8.
    const double expected = (std::abs(0.375 - 0.5) - 0.5) / dt + (0.125 - 0.25) / dx;
    const auto r = entropy_residual(mesh.complex(), u, next, f, dt, 0.5);
    CHECK(r[4] == doctest::Approx(expected));
    CHECK(r[4] < 0.0);
  }

  SUBCASE("constant state") {
    const CellField u(std::vector<double>(8, 0.4), mesh.mesh_id());
    const auto next = step(mesh.complex(), u, f, 0.5 * dx);
    for (double k : {-1.0, 0.1, 0.4, 2.0})
      for (double r : entropy_residual(mesh.complex(), u, next, f, 0.5 * dx, k)) CHECK(std::abs(r) <= 1e-12);
  }

  SUBCASE("k outside the range is the conservation identity") {
    const CellField u(testing::uniform_vector(8, 0.0, 1.0), mesh.mesh_id());
    const double dt = 0.5 * max_stable_dt(mesh.complex(), f, u.values());
    const auto next = step(mesh.complex(), u, f, dt);
    for (double k : {-3.0, 4.0})
      for (double r : entropy_residual(mesh.complex(), u, next, f, dt, k)) CHECK(std::abs(r) <= 1e-12);
  }

  SUBCASE("Burgers Riemann runs satisfy the inequality in every cell") {
    const auto fine = flat_circle(100);
    const auto g = burgers_1d(fine);
    for (auto scheme : {NumericalFlux::rusanov, NumericalFlux::godunov_scalar}) {
      for (auto [l, r] : {std::pair{1.0, 0.0}, std::pair{0.0, 1.0}, std::pair{-0.5, 1.5}}) {
        CellField u = step_data(fine, l, r);
        for (int s = 0; s < 40; ++s) {
          const double dt = 0.9 * max_stable_dt(fine.complex(), g, u.values());
          const auto next = step(fine.complex(), u, g, dt, scheme);
          for (double k : {-0.25, 0.0, 0.3, 0.5, 0.9})
            for (double res : entropy_residual(fine.complex(), u, next, g, dt, k, scheme)) CHECK(res <= 1e-10);
          u = next;
        }
      }
    }
  }
}

TEST_CASE("CFL violation reports the admissible step") {
  const auto mesh = flat_circle(16);
  const auto f = burgers_1d(mesh);
  const CellField u(std::vector<double>(16, 2.0), mesh.mesh_id());
  const double admissible = max_stable_dt(mesh.complex(), f, u.values());
  CHECK(admissible == doctest::Approx(mesh.dx() / 2.0));
  CHECK(cfl_number(mesh.complex(), f, u.values(), admissible) == doctest::Approx(1.0));
  try {
    step(mesh.complex(), u, f, 2.0 * admissible);
    FAIL("expected CflError");
  } catch (const CflError& e) {
    CHECK(e.admissible_dt() == doctest::Approx(admissible));
  }
  const auto zero = flux_from_potential_1d(mesh, Potential{});
  CHECK(std::isinf(max_stable_dt(mesh.complex(), zero, u.values())));
}

TEST_CASE("numerical edge fluxes") {
  const auto mesh = flat_circle(8);
  const auto f = burgers_1d(mesh);
  CHECK(numerical_edge_flux(f, NumericalFlux::godunov_scalar, 0, 1.0, 0.0) == doctest::Approx(0.5));
  CHECK(numerical_edge_flux(f, NumericalFlux::godunov_scalar, 0, 0.0, 1.0) == 0.0);
  CHECK(numerical_edge_flux(f, NumericalFlux::godunov_scalar, 0, -1.0, 1.0) == 0.0);
  CHECK(numerical_edge_flux(f, NumericalFlux::godunov_scalar, 0, 1.0, -1.0) == doctest::Approx(0.5));
  CHECK(numerical_edge_flux(f, NumericalFlux::rusanov, 0, 1.0, 0.0) == doctest::Approx(0.75));
  // Monotone: nondecreasing in the left state, nonincreasing in the right.
  for (auto scheme : {NumericalFlux::rusanov, NumericalFlux::godunov_scalar}) {
    for (int trial = 0; trial < 200; ++trial) {
      const double a = testing::uniform(-2, 2);
      const double b = testing::uniform(-2, 2);
      const double d = testing::uniform(0, 0.5);
      CHECK(numerical_edge_flux(f, scheme, 0, a + d, b) >= numerical_edge_flux(f, scheme, 0, a, b) - 1e-14);
      CHECK(numerical_edge_flux(f, scheme, 0, a, b + d) <= numerical_edge_flux(f, scheme, 0, a, b) + 1e-14);
    }
  }
}
