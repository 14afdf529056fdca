#include "mcl/gowdy/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <fmt/format.h>

#include "mcl/error.hpp"

namespace mcl::gowdy {

namespace {

// Rapidity artanh(w) of the relative velocity across a shock joining
// densities mu_a and mu_b, using
//   1 - w^2 = mu_a mu_b (1 + c^2)^2 / ((mu_a + c^2 mu_b)(mu_b + c^2 mu_a))
// so that strong shocks near vacuum stay finite.
double shock_rapidity(double mu_a, double mu_b, double c2) {
  const double d = mu_b - mu_a;
  const double w = std::min(1.0, std::sqrt(c2 * d * d / ((mu_a + c2 * mu_b) * (mu_b + c2 * mu_a))));
  const double log_one_minus_w2 = std::log(mu_a) + std::log(mu_b) + 2.0 * std::log1p(c2) -
                                  std::log(mu_a + c2 * mu_b) - std::log(mu_b + c2 * mu_a);
  return std::log1p(w) - 0.5 * log_one_minus_w2;
}

struct Curves {
  FluidState left;
  FluidState right;
  double c2;
  double k;  // c / (1 + c^2)

  // Rapidity behind a 1-wave from the left state, as a function of ln mu.
  double forward(double ln_mu) const {
    const double mu = std::exp(ln_mu);
    if (mu <= left.mu) return std::atanh(left.v) - k * (ln_mu - std::log(left.mu));
    return std::atanh(left.v) - shock_rapidity(left.mu, mu, c2);
  }

  // Rapidity ahead of a 2-wave into the right state.
  double backward(double ln_mu) const {
    const double mu = std::exp(ln_mu);
    if (mu <= right.mu) return std::atanh(right.v) + k * (ln_mu - std::log(right.mu));
    return std::atanh(right.v) + shock_rapidity(right.mu, mu, c2);
  }
};

// [S] / [tau]; for jumps at roundoff level the quotient is meaningless and
// the mean characteristic speed of the family is used instead.
double shock_speed(const FluidState& a, const FluidState& b, double c_s, int family) {
  const auto qa = primitive_to_conserved(a, c_s);
  const auto qb = primitive_to_conserved(b, c_s);
  const double jump = qb.tau - qa.tau;
  if (std::abs(jump) > 1e-8 * std::max(qa.tau, qb.tau)) return (qb.S - qa.S) / jump;
  const auto la = wave_speeds(a, c_s);
  const auto lb = wave_speeds(b, c_s);
  return family == 1 ? 0.5 * (la.first + lb.first) : 0.5 * (la.second + lb.second);
}

}  // namespace

RiemannSolution::RiemannSolution(FluidState left, FluidState middle, FluidState right, Wave wave1, Wave wave2,
                                 double c_s)
    : left_(left), middle_(middle), right_(right), wave1_(wave1), wave2_(wave2), c_s_(c_s) {}

FluidState RiemannSolution::sample(double xi) const {
  const double c = c_s_;
  const double k = c / (1.0 + c * c);
  if (wave1_.kind != WaveKind::none && xi < wave1_.speed_hi) {
    if (xi < wave1_.speed_lo || wave1_.kind == WaveKind::shock) return left_;
    const double v = (xi + c) / (1.0 + xi * c);
    return {left_.mu * std::exp(-(std::atanh(v) - std::atanh(left_.v)) / k), v};
  }
  if (wave2_.kind == WaveKind::none || xi < wave2_.speed_lo) return middle_;
  if (xi >= wave2_.speed_hi) return right_;
  const double v = (xi - c) / (1.0 - xi * c);
  return {right_.mu * std::exp((std::atanh(v) - std::atanh(right_.v)) / k), v};
}

RiemannSolution riemann_solve(const FluidState& left, const FluidState& right, double c_s) {
  check_physical(left);
  check_physical(right);
  if (!(c_s > 0.0 && c_s < 1.0)) throw DomainError(fmt::format("sound speed must satisfy 0<c_s<1, got {}", c_s));
  if (left == right) return {left, left, right, {}, {}, c_s};

  const Curves curves{left, right, c_s * c_s, c_s / (1.0 + c_s * c_s)};
  const auto gap = [&](double ln_mu) { return curves.forward(ln_mu) - curves.backward(ln_mu); };

  double lo = std::log(std::min(left.mu, right.mu)) - 1.0;
  double hi = std::log(std::max(left.mu, right.mu)) + 1.0;
  double g_lo = gap(lo);
  double g_hi = gap(hi);
  for (int it = 0; g_lo < 0.0 && lo > -700.0; ++it) {
    hi = lo;
    g_hi = g_lo;
    lo -= 2.0;
    g_lo = gap(lo);
  }
  for (int it = 0; g_hi > 0.0 && hi < 700.0; ++it) {
    lo = hi;
    g_lo = g_hi;
    hi += 2.0;
    g_hi = gap(hi);
  }
  if (!(g_lo >= 0.0 && g_hi <= 0.0))
    throw NumericalError(fmt::format("riemann_solve: wave curves do not intersect for left (mu {}, v {}) and right "
                                     "(mu {}, v {})",
                                     left.mu, left.v, right.mu, right.v));

  double ln_mid = lo;
  if (g_lo == 0.0) {
    ln_mid = lo;
  } else if (g_hi == 0.0) {
    ln_mid = hi;
  } else {
    std::uintmax_t max_iter = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(gap, lo, hi, g_lo, g_hi,
                                                          boost::math::tools::eps_tolerance<double>(52), max_iter);
    ln_mid = std::abs(gap(a)) <= std::abs(gap(b)) ? a : b;
  }

  const double rapidity = 0.5 * (curves.forward(ln_mid) + curves.backward(ln_mid));
  const FluidState middle{std::exp(ln_mid), std::tanh(rapidity)};
  if (!(middle.mu > 0.0) || !(std::abs(middle.v) < 1.0) || !std::isfinite(middle.mu))
    throw NumericalError(fmt::format("riemann_solve: middle state (mu {}, v {}) is unphysical for left (mu {}, v {}) "
                                     "and right (mu {}, v {})",
                                     middle.mu, middle.v, left.mu, left.v, right.mu, right.v));

  Wave w1;
  if (middle.mu > left.mu) {
    const double s = shock_speed(left, middle, c_s, 1);
    w1 = {WaveKind::shock, s, s};
  } else if (middle.mu < left.mu) {
    w1 = {WaveKind::rarefaction, wave_speeds(left, c_s).first, wave_speeds(middle, c_s).first};
  }
  Wave w2;
  if (middle.mu > right.mu) {
    const double s = shock_speed(middle, right, c_s, 2);
    w2 = {WaveKind::shock, s, s};
  } else if (middle.mu < right.mu) {
    w2 = {WaveKind::rarefaction, wave_speeds(middle, c_s).second, wave_speeds(right, c_s).second};
  }
  return {left, middle, right, w1, w2, c_s};
}

}  // namespace mcl::gowdy
