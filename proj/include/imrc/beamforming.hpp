#ifndef IMRC_BEAMFORMING_HPP
#define IMRC_BEAMFORMING_HPP

#include <algorithm>
#include <cmath>

#include "imrc/model.hpp"

namespace imrc {

/// Scaled relay beam vectors t_i0 = sqrt(rho_i PR / (P - p_i)) t_i.
struct BeamVectors {
  Vec2 t10;
  Vec2 t20;
  bool boundary1 = false;
  bool boundary2 = false;

  const Vec2& operator[](User u) const noexcept { return u == User::first ? t10 : t20; }
  bool boundary(User u) const noexcept { return u == User::first ? boundary1 : boundary2; }
};

/// Interference channel seen by the receivers after relay beamforming.
/// f12 and f21 are the untouched cross gains.
struct EffectiveChannel {
  double f11 = 0.0;
  double f22 = 0.0;
  double f12 = 0.0;
  double f21 = 0.0;

  double direct(User u) const noexcept { return u == User::first ? f11 : f22; }
  // Gain from the other transmitter into receiver u.
  double cross_into(User u) const noexcept { return u == User::first ? f21 : f12; }
};

/// Which coordinate parameterizes the zero-forcing line.
enum class Chart {
  automatic,  // divide by the larger-magnitude component of hRj
  primary,    // divide by hRj,2 (requires hRj,2 != 0)
  swapped,    // antenna indices exchanged, divide by hRj,1
};

namespace detail {

inline void require_nonzero(const Vec2& hRj) {
  if (hRj.a1 == 0.0 && hRj.a2 == 0.0)
    throw Error(ErrorCode::DegenerateRelayChannel, "relay-to-receiver channel is the zero vector");
}

// Closed-form intersection of the zero-forcing line h_ij + hRj.t = 0 with the
// circle ||t||^2 = c, given root = sqrt(||hRj||^2 c - h_ij^2):
//   t = [ T / ||hRj||^2 ,  -h_ij / hRj,2 - (hRj,1 / hRj,2) T / ||hRj||^2 ]
//   T = n hRj,2 root - h_ij hRj,1
// In the swapped chart the branch sign is negated so that both charts return
// the same vector for the same n.
inline Vec2 zero_forcing_vector(double h_ij, const Vec2& hRj, Sign n, double root,
                                Chart chart = Chart::automatic) {
  require_nonzero(hRj);
  bool swap = false;
  switch (chart) {
    case Chart::automatic: swap = std::abs(hRj.a2) < std::abs(hRj.a1); break;
    case Chart::primary: swap = false; break;
    case Chart::swapped: swap = true; break;
  }
  const Vec2 h = swap ? Vec2{hRj.a2, hRj.a1} : hRj;
  if (h.a2 == 0.0) throw Error(ErrorCode::DegenerateRelayChannel, "chart divides by a zero antenna gain");
  const double nn = swap ? -value(n) : value(n);
  const double q = norm2(h);
  const double T = nn * h.a2 * root - h_ij * h.a1;
  const Vec2 t{T / q, -h_ij / h.a2 - (h.a1 / h.a2) * T / q};
  return swap ? Vec2{t.a2, t.a1} : t;
}

}  // namespace detail

/// Beam vector for user i at the p_i = P boundary: the source sends no old
/// message, so t_i0 is orthogonal to hRj with ||t_i0||^2 = rho_i PR.
/// n = plus selects the orthogonal direction with hRi.t_i0 >= 0.
inline Vec2 boundary_beam_vector(const ChannelSetup& s, double rho_i, User u, Sign n = Sign::plus) {
  const UserView v = view(s, u);
  detail::require_nonzero(v.hRj);
  Vec2 dir = (1.0 / norm(v.hRj)) * Vec2{v.hRj.a2, -v.hRj.a1};
  if (dot(v.hRi, dir) < 0.0) dir = -1.0 * dir;
  return (value(n) * std::sqrt(rho_i * s.PR)) * dir;
}

/// Zero-forcing beam vector t_i0 for user i. Dispatches to the boundary
/// construction when p_i == P.
inline Vec2 beam_vector(const ChannelSetup& s, const PowerAllocation& a, User u) {
  const double p = power_of(a, u);
  const double rho = rho_of(a, u);
  const Sign n = sign_of(a, u);
  if (p >= s.P) return boundary_beam_vector(s, rho, u, n);

  const UserView v = view(s, u);
  detail::require_nonzero(v.hRj);
  const double rad = exact_radicand(s, u, rho, p);
  if (rad < -radicand_slack(s, u, rho, p))
    throw Error(ErrorCode::InfeasibleRadicand,
                "user " + std::to_string(index(u)) + ": relay power too small to cancel the cross link");
  return detail::zero_forcing_vector(v.h_ij, v.hRj, n, std::sqrt(std::max(rad, 0.0)));
}

inline BeamVectors beam_vectors(const ChannelSetup& s, const PowerAllocation& a) {
  BeamVectors b;
  b.t10 = beam_vector(s, a, User::first);
  b.t20 = beam_vector(s, a, User::second);
  b.boundary1 = a.p1 >= s.P;
  b.boundary2 = a.p2 >= s.P;
  return b;
}

/// f_ii = h_ii + hRi.t_i0 (the source still sends part of the old message)
/// or f_ii = hRi.t_i0 on the p_i = P boundary; f_ij = h_ij.
inline EffectiveChannel effective_gains(const ChannelSetup& s, const PowerAllocation& a) {
  const BeamVectors b = beam_vectors(s, a);
  EffectiveChannel e;
  e.f11 = (b.boundary1 ? 0.0 : s.h11) + dot(s.hR1, b.t10);
  e.f22 = (b.boundary2 ? 0.0 : s.h22) + dot(s.hR2, b.t20);
  e.f12 = s.h12;
  e.f21 = s.h21;
  return e;
}

/// Residual interference at receiver j caused by user i's old message for a
/// given beam vector. Exposed so tests can probe perturbed vectors.
inline double zero_forcing_residual(const ChannelSetup& s, User u, const Vec2& t_i0, bool boundary) {
  const UserView v = view(s, u);
  return (boundary ? 0.0 : v.h_ij) + dot(v.hRj, t_i0);
}

inline double zero_forcing_residual(const ChannelSetup& s, const PowerAllocation& a, User u) {
  return zero_forcing_residual(s, u, beam_vector(s, a, u), power_of(a, u) >= s.P);
}

}  // namespace imrc

#endif  // IMRC_BEAMFORMING_HPP
