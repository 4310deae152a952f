// Test-only reference computations. Nothing here calls into the code paths
// being checked: beam vectors come from a trigonometric parameterization of
// the norm circle, MAC sums from an explicit 2x2 matrix product.
#ifndef IMRC_TESTS_ORACLES_HPP
#define IMRC_TESTS_ORACLES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include "imrc/model.hpp"

namespace oracle {

using imrc::ChannelSetup;
using imrc::PowerAllocation;
using imrc::Vec2;

/// Both points t with ||t||^2 = c and hRj . t = -h_ij, found by writing
/// t = sqrt(c) (cos th, sin th) and solving R cos(th - phi) = -h_ij.
inline std::optional<std::array<Vec2, 2>> circle_line(double h_ij, const Vec2& hRj, double c) {
  const double r = std::sqrt(c);
  const double R = r * std::hypot(hRj.a1, hRj.a2);
  const double ratio = -h_ij / R;
  if (!(std::abs(ratio) <= 1.0 + 1e-12)) return std::nullopt;
  const double phi = std::atan2(hRj.a2, hRj.a1);
  const double delta = std::acos(std::clamp(ratio, -1.0, 1.0));
  return std::array<Vec2, 2>{Vec2{r * std::cos(phi + delta), r * std::sin(phi + delta)},
                             Vec2{r * std::cos(phi - delta), r * std::sin(phi - delta)}};
}

/// det(I + G diag(p1, p2) G^T) by forming the matrix entry by entry.
inline double mac_det(const ChannelSetup& s, double p1, double p2) {
  const double G[2][2] = {{s.g1R.a1, s.g2R.a1}, {s.g1R.a2, s.g2R.a2}};
  const double K[2] = {p1, p2};
  double M[2][2] = {{1.0, 0.0}, {0.0, 1.0}};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      for (int k = 0; k < 2; ++k) M[r][c] += G[r][k] * K[k] * G[c][k];
  return M[0][0] * M[1][1] - M[0][1] * M[1][0];
}

/// Seeded generator of channel setups and feasible allocations.
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  imrc::Sign sign() { return uniform(0.0, 1.0) < 0.5 ? imrc::Sign::minus : imrc::Sign::plus; }

  Vec2 vec(double a = 2.0) { return {uniform(-a, a), uniform(-a, a)}; }

  ChannelSetup setup() {
    ChannelSetup s;
    s.h11 = uniform(-2, 2);
    s.h12 = uniform(-2, 2);
    s.h21 = uniform(-2, 2);
    s.h22 = uniform(-2, 2);
    s.g1R = vec();
    s.g2R = vec();
    s.hR1 = vec();
    s.hR2 = vec();
    s.P = log_uniform(1e-3, 1.0);
    s.PR = s.P * log_uniform(0.3, 30.0);
    return s;
  }

  // Relay channels collinear, det(H) = 0.
  ChannelSetup degenerate_setup() {
    ChannelSetup s = setup();
    s.hR1 = uniform(-2, 2) * s.hR2;
    return s;
  }

  // Setup plus an allocation with p_i < P where both users can be zero-forced.
  std::pair<ChannelSetup, PowerAllocation> feasible_instance() {
    for (;;) {
      const ChannelSetup s = setup();
      PowerAllocation a{uniform(0, 0.999) * s.P, uniform(0, 0.999) * s.P, uniform(0.02, 0.98), sign(), sign()};
      if (imrc::feasibility(s, a).exact()) return {s, a};
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle

#endif  // IMRC_TESTS_ORACLES_HPP
