#pragma once

#include "mcl/gowdy/fluid.hpp"

namespace mcl::gowdy {

enum class WaveKind { none, shock, rarefaction };

/// One elementary wave. A shock has speed_lo == speed_hi; a rarefaction fan
/// spans [speed_lo, speed_hi].
struct Wave {
  WaveKind kind = WaveKind::none;
  double speed_lo = 0.0;
  double speed_hi = 0.0;
};

/// Self-similar solution of the homogeneous isothermal fluid Riemann problem:
/// a 1-wave from left to middle, then a 2-wave from middle to right.
class RiemannSolution {
 public:
  RiemannSolution(FluidState left, FluidState middle, FluidState right, Wave wave1, Wave wave2, double c_s);

  const FluidState& left() const noexcept { return left_; }
  const FluidState& middle() const noexcept { return middle_; }
  const FluidState& right() const noexcept { return right_; }
  const Wave& wave1() const noexcept { return wave1_; }
  const Wave& wave2() const noexcept { return wave2_; }

  /// State at xi = x / t.
  FluidState sample(double xi) const;

 private:
  FluidState left_;
  FluidState middle_;
  FluidState right_;
  Wave wave1_;
  Wave wave2_;
  double c_s_;
};

/// Exact solver. The middle density solves the intersection of the forward
/// 1-wave curve and the backward 2-wave curve (rapidity as a function of
/// ln mu), found by a bracketed TOMS 748 root search.
RiemannSolution riemann_solve(const FluidState& left, const FluidState& right, double c_s);

}  // namespace mcl::gowdy
