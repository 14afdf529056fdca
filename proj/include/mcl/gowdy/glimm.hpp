#pragma once

#include <cstdint>
#include <vector>

#include "mcl/gowdy/fluid.hpp"

namespace mcl::gowdy {

/// Radical inverse of index (>= 1) in the given base (>= 2).
double van_der_corput(std::uint64_t index, unsigned base = 2);

/// Random-choice step on a periodic grid with cells centred at i dx. Each
/// interface Riemann problem is solved exactly and cell i takes the value at
/// x_i + (theta - 1/2) dx, theta = van_der_corput(step_index, base). Requires
/// dt max|lambda| <= dx / 2.
std::vector<FluidState> glimm_step(const std::vector<FluidState>& cells, double dx, double dt,
                                   std::uint64_t step_index, double c_s, unsigned base = 2);

}  // namespace mcl::gowdy
