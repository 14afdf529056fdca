#include "mcl/gowdy/glimm.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "mcl/error.hpp"
#include "mcl/gowdy/riemann.hpp"

namespace mcl::gowdy {

double van_der_corput(std::uint64_t index, unsigned base) {
  if (base < 2) throw DomainError(fmt::format("van der Corput base must be >= 2, got {}", base));
  if (index == 0) throw DomainError("van der Corput index starts at 1");
  double result = 0.0;
  double scale = 1.0 / base;
  while (index > 0) {
    result += static_cast<double>(index % base) * scale;
    index /= base;
    scale /= base;
  }
  return result;
}

std::vector<FluidState> glimm_step(const std::vector<FluidState>& cells, double dx, double dt,
                                   std::uint64_t step_index, double c_s, unsigned base) {
  const std::size_t n = cells.size();
  if (n < 2) throw DomainError("glimm_step: need at least 2 cells");
  if (!(dx > 0.0) || !(dt >= 0.0)) throw DomainError(fmt::format("glimm_step: invalid dx = {}, dt = {}", dx, dt));
  if (dt == 0.0) return cells;

  double max_speed = 0.0;
  for (const auto& c : cells) {
    const auto [lm, lp] = wave_speeds(c, c_s);
    max_speed = std::max({max_speed, std::abs(lm), std::abs(lp)});
  }
  if (dt * max_speed > 0.5 * dx * (1.0 + 1e-12))
    throw CflError(fmt::format("glimm_step: dt = {} violates the half-CFL condition (admissible dt <= {})", dt,
                               0.5 * dx / max_speed),
                   0.5 * dx / max_speed);

  const double theta = van_der_corput(step_index, base);
  std::vector<FluidState> next(n);
  if (theta < 0.5) {
    const double xi = theta * dx / dt;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& l = cells[(i + n - 1) % n];
      next[i] = l == cells[i] ? cells[i] : riemann_solve(l, cells[i], c_s).sample(xi);
    }
  } else {
    const double xi = (theta - 1.0) * dx / dt;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& r = cells[(i + 1) % n];
      next[i] = r == cells[i] ? cells[i] : riemann_solve(cells[i], r, c_s).sample(xi);
    }
  }
  return next;
}

}  // namespace mcl::gowdy
