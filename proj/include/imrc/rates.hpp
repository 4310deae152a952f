#ifndef IMRC_RATES_HPP
#define IMRC_RATES_HPP

#include <algorithm>
#include <cmath>
#include <numbers>

#include "imrc/beamforming.hpp"
#include "imrc/model.hpp"

namespace imrc {

// All rates are in bits per channel use.
inline double log2_1p(double x) noexcept { return std::log1p(x) / std::numbers::ln2; }

struct RatePoint {
  double R1 = 0.0;
  double R2 = 0.0;

  double sum() const noexcept { return R1 + R2; }
  double operator[](User u) const noexcept { return u == User::first ? R1 : R2; }
  friend bool operator==(const RatePoint&, const RatePoint&) = default;
};

/// Decoding constraints at the relay (successive cancellation over the MAC).
struct MacRates {
  double R1mac = 0.0;
  double R2mac = 0.0;
  double Rsum_mac = 0.0;
};

/// R_i^MAC = log2(1 + ||g_iR||^2 p_i) and
/// R_sum^MAC = log2 det(I + G diag(p1, p2) G^T), G = [g1R g2R].
inline MacRates mac_rates(const ChannelSetup& s, double p1, double p2) noexcept {
  // M = G K G^T; det(I + M) - 1 = tr(M) + det(M)
  const double m11 = p1 * s.g1R.a1 * s.g1R.a1 + p2 * s.g2R.a1 * s.g2R.a1;
  const double m22 = p1 * s.g1R.a2 * s.g1R.a2 + p2 * s.g2R.a2 * s.g2R.a2;
  const double m12 = p1 * s.g1R.a1 * s.g1R.a2 + p2 * s.g2R.a1 * s.g2R.a2;
  MacRates r;
  r.R1mac = log2_1p(norm2(s.g1R) * p1);
  r.R2mac = log2_1p(norm2(s.g2R) * p2);
  r.Rsum_mac = std::max(0.0, log2_1p(m11 + m22 + (m11 * m22 - m12 * m12)));
  return r;
}

struct MacSumCoeffs {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// alpha = g11^2 g22^2 + g21^2 g12^2 - 2 g12 g21 g11 g22 with g_iR = [g_i1 g_i2],
/// beta = ||g1R||^2, gamma = ||g2R||^2.
inline MacSumCoeffs mac_sum_coeffs(const ChannelSetup& s) noexcept {
  const double g11 = s.g1R.a1, g12 = s.g1R.a2, g21 = s.g2R.a1, g22 = s.g2R.a2;
  return {g11 * g11 * g22 * g22 + g21 * g21 * g12 * g12 - 2.0 * g12 * g21 * g11 * g22, norm2(s.g1R),
          norm2(s.g2R)};
}

/// R_sum^MAC = log2(alpha p1 p2 + beta p1 + gamma p2 + 1).
inline double mac_sum_expanded(const ChannelSetup& s, double p1, double p2) noexcept {
  const MacSumCoeffs c = mac_sum_coeffs(s);
  return std::max(0.0, log2_1p(c.alpha * p1 * p2 + c.beta * p1 + c.gamma * p2));
}

/// Treat-interference-as-noise rates at the destinations:
///   R_i^IC = log2(1 + f_ii^2 (P - p_i) / (1 + f_ji^2 p_j)).
/// On the p_i = P boundary the relay alone carries the old message with the
/// full split rho_i PR, already folded into f_ii, so the numerator is f_ii^2.
inline RatePoint ic_rates(const ChannelSetup& s, const PowerAllocation& a, const EffectiveChannel& e) noexcept {
  auto rate = [&](User u) {
    const double p = power_of(a, u);
    const double pj = power_of(a, other(u));
    const double f = e.direct(u);
    const double fc = e.cross_into(u);
    const double old_power = p >= s.P ? 1.0 : s.P - p;
    return log2_1p(f * f * old_power / (1.0 + fc * fc * pj));
  };
  return {rate(User::first), rate(User::second)};
}

inline RatePoint ic_rates(const ChannelSetup& s, const PowerAllocation& a) {
  return ic_rates(s, a, effective_gains(s, a));
}

/// R_u^IC alone; only user u's beam vector has to exist.
inline double user_ic_rate(const ChannelSetup& s, const PowerAllocation& a, User u) {
  const UserView v = view(s, u);
  const double p = power_of(a, u);
  const double pj = power_of(a, other(u));
  const bool boundary = p >= s.P;
  const double f = (boundary ? 0.0 : v.h_ii) + dot(v.hRi, beam_vector(s, a, u));
  return log2_1p(f * f * (boundary ? 1.0 : s.P - p) / (1.0 + v.h_ji * v.h_ji * pj));
}

/// Destination rates when the relay has abundant power (PR >> P):
///   R_1^AP = log2(1 + det(H)^2 rho1 PR / (||hR2||^2 (1 + h21^2 p2)))
/// and symmetrically for user 2. A zero relay channel gives rate 0.
inline RatePoint abundant_power_rates(const ChannelSetup& s, const PowerAllocation& a) noexcept {
  const double d2 = relay_det(s) * relay_det(s);
  auto rate = [&](User u) {
    const UserView v = view(s, u);
    const double q = norm2(v.hRj);
    if (q == 0.0) return 0.0;
    const double pj = power_of(a, other(u));
    return log2_1p(d2 * rho_of(a, u) * s.PR / (q * (1.0 + v.h_ji * v.h_ji * pj)));
  };
  return {rate(User::first), rate(User::second)};
}

struct SchemeRates {
  RatePoint point;      // achievable pair after the sum cap
  RatePoint unclipped;  // (min(R1mac, R1ic), min(R2mac, R2ic))
  RatePoint ic;
  MacRates mac;
  double sum = 0.0;  // min(unclipped.sum(), Rsum_mac), computed without rescaling
  bool capped = false;
};

/// Rate pair of the full scheme: R_i = min(R_i^MAC, R_i^IC), jointly capped by
/// R_sum^MAC. When the cap binds the pair is scaled down along the ray through
/// the origin so R1 + R2 = R_sum^MAC.
inline SchemeRates scheme_rate_point(const ChannelSetup& s, const PowerAllocation& a) {
  SchemeRates r;
  r.mac = mac_rates(s, a.p1, a.p2);
  r.ic = ic_rates(s, a);
  r.unclipped = {std::min(r.mac.R1mac, r.ic.R1), std::min(r.mac.R2mac, r.ic.R2)};
  const double total = r.unclipped.sum();
  r.capped = total > r.mac.Rsum_mac;
  r.sum = r.capped ? r.mac.Rsum_mac : total;
  if (r.capped) {
    const double scale = r.mac.Rsum_mac / total;
    r.point = {r.unclipped.R1 * scale, r.unclipped.R2 * scale};
  } else {
    r.point = r.unclipped;
  }
  return r;
}

/// Rate loss of block Markov transmission over B blocks: (B - 1) / B.
inline RatePoint block_penalty(const RatePoint& r, long long B) {
  if (B < 2) throw Error(ErrorCode::BadBlockCount, "block count must be at least 2");
  const double f = static_cast<double>(B - 1) / static_cast<double>(B);
  return {r.R1 * f, r.R2 * f};
}

}  // namespace imrc

#endif  // IMRC_RATES_HPP
