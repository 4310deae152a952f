#ifndef IMRC_MODEL_HPP
#define IMRC_MODEL_HPP

#include <cmath>
#include <string>

#include "imrc/error.hpp"

namespace imrc {

// Real 2-vector: relay antenna space.
struct Vec2 {
  double a1 = 0.0;
  double a2 = 0.0;

  friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

constexpr double dot(const Vec2& x, const Vec2& y) noexcept { return x.a1 * y.a1 + x.a2 * y.a2; }
constexpr double norm2(const Vec2& x) noexcept { return dot(x, x); }
inline double norm(const Vec2& x) noexcept { return std::hypot(x.a1, x.a2); }
constexpr Vec2 operator+(const Vec2& x, const Vec2& y) noexcept { return {x.a1 + y.a1, x.a2 + y.a2}; }
constexpr Vec2 operator-(const Vec2& x, const Vec2& y) noexcept { return {x.a1 - y.a1, x.a2 - y.a2}; }
constexpr Vec2 operator*(double s, const Vec2& x) noexcept { return {s * x.a1, s * x.a2}; }
// det([x y]) with x, y as columns.
constexpr double cross(const Vec2& x, const Vec2& y) noexcept { return x.a1 * y.a2 - y.a1 * x.a2; }

/// One problem instance of the two-user interference channel with a
/// two-antenna full-duplex relay. Unit noise variance is implied everywhere.
///
/// Cross gains follow the transmitter-first convention: h12 is the gain from
/// transmitter 1 to receiver 2.
struct ChannelSetup {
  double h11 = 0.0;
  double h12 = 0.0;
  double h21 = 0.0;
  double h22 = 0.0;
  Vec2 g1R;
  Vec2 g2R;
  Vec2 hR1;
  Vec2 hR2;
  double P = 0.0;   // per-transmitter power budget (linear)
  double PR = 0.0;  // relay power budget (linear)

  friend bool operator==(const ChannelSetup&, const ChannelSetup&) = default;
};

/// det(H) with H = [hR1 hR2].
inline double relay_det(const ChannelSetup& s) noexcept { return cross(s.hR1, s.hR2); }

enum class Sign : int { minus = -1, plus = 1 };

constexpr double value(Sign n) noexcept { return static_cast<double>(static_cast<int>(n)); }
constexpr Sign flip(Sign n) noexcept { return n == Sign::plus ? Sign::minus : Sign::plus; }

/// A point in the scheme's decision space. rho2 and the old-message powers
/// P - p_i are derived and never stored.
struct PowerAllocation {
  double p1 = 0.0;
  double p2 = 0.0;
  double rho1 = 0.5;
  Sign n1 = Sign::plus;
  Sign n2 = Sign::plus;

  double rho2() const noexcept { return 1.0 - rho1; }

  friend bool operator==(const PowerAllocation&, const PowerAllocation&) = default;
};

enum class User { first, second };

constexpr User other(User u) noexcept { return u == User::first ? User::second : User::first; }
constexpr int index(User u) noexcept { return u == User::first ? 1 : 2; }

// Everything one user's formulas need, with i the user and j the other one.
struct UserView {
  double h_ii;
  double h_ij;  // transmitter i -> receiver j (the leak the relay cancels)
  double h_ji;  // transmitter j -> receiver i
  Vec2 hRi;
  Vec2 hRj;
  Vec2 giR;
};

inline UserView view(const ChannelSetup& s, User u) noexcept {
  if (u == User::first) return {s.h11, s.h12, s.h21, s.hR1, s.hR2, s.g1R};
  return {s.h22, s.h21, s.h12, s.hR2, s.hR1, s.g2R};
}

inline double power_of(const PowerAllocation& a, User u) noexcept { return u == User::first ? a.p1 : a.p2; }
inline double rho_of(const PowerAllocation& a, User u) noexcept { return u == User::first ? a.rho1 : a.rho2(); }
inline Sign sign_of(const PowerAllocation& a, User u) noexcept { return u == User::first ? a.n1 : a.n2; }

namespace detail {

inline bool finite(const Vec2& v) noexcept { return std::isfinite(v.a1) && std::isfinite(v.a2); }

}  // namespace detail

/// Returns the setup unchanged, or throws NonFinite / NegativePower.
inline const ChannelSetup& validate(const ChannelSetup& s) {
  const bool finite = std::isfinite(s.h11) && std::isfinite(s.h12) && std::isfinite(s.h21) &&
                      std::isfinite(s.h22) && detail::finite(s.g1R) && detail::finite(s.g2R) &&
                      detail::finite(s.hR1) && detail::finite(s.hR2) && std::isfinite(s.P) &&
                      std::isfinite(s.PR);
  if (!finite) throw Error(ErrorCode::NonFinite, "channel setup contains NaN or infinite entries");
  if (s.P < 0.0) throw Error(ErrorCode::NegativePower, "transmit power budget P is negative");
  if (s.PR < 0.0) throw Error(ErrorCode::NegativePower, "relay power budget PR is negative");
  return s;
}

inline void check_allocation(const ChannelSetup& s, const PowerAllocation& a) {
  auto in_range = [](double x, double hi) { return std::isfinite(x) && x >= 0.0 && x <= hi; };
  if (!in_range(a.p1, s.P) || !in_range(a.p2, s.P))
    throw Error(ErrorCode::InvalidAllocation, "powers must lie in [0, P]");
  if (!in_range(a.rho1, 1.0)) throw Error(ErrorCode::InvalidAllocation, "rho1 must lie in [0, 1]");
}

/// Radicand of the beamforming square root for user i at power p_i < P:
/// ||hRj||^2 rho_i PR / (P - p_i) - h_ij^2.
inline double exact_radicand(const ChannelSetup& s, User u, double rho_i, double p_i) noexcept {
  const UserView v = view(s, u);
  return norm2(v.hRj) * rho_i * s.PR / (s.P - p_i) - v.h_ij * v.h_ij;
}

/// Radicand of S_i: rho_i PR ||hRj||^2 / P - h_ij^2.
inline double linearization_radicand(const ChannelSetup& s, User u, double rho_i) noexcept {
  const UserView v = view(s, u);
  return rho_i * s.PR * norm2(v.hRj) / s.P - v.h_ij * v.h_ij;
}

// Grid sweeps land on the feasibility boundary; radicands this close to zero
// are treated as zero.
inline double radicand_slack(const ChannelSetup& s, User u, double rho_i, double p_i) noexcept {
  return 1e-12 * norm2(view(s, u).hRj) * rho_i * s.PR / (s.P - p_i);
}

struct UserFeasibility {
  bool boundary = false;       // p_i == P, old message carried by the relay alone
  bool exact = false;          // beamforming solvable
  bool linearization = false;  // S_i radicand > 0
  double radicand = 0.0;       // exact radicand, 0 on the boundary
  double lin_radicand = 0.0;
};

struct Feasibility {
  UserFeasibility user1;
  UserFeasibility user2;

  bool exact() const noexcept { return user1.exact && user2.exact; }
  const UserFeasibility& operator[](User u) const noexcept { return u == User::first ? user1 : user2; }
};

inline UserFeasibility user_feasibility(const ChannelSetup& s, const PowerAllocation& a, User u) noexcept {
  UserFeasibility f;
  const double p = power_of(a, u);
  const double rho = rho_of(a, u);
  f.lin_radicand = s.P > 0.0 ? linearization_radicand(s, u, rho) : -1.0;
  f.linearization = s.P > 0.0 && f.lin_radicand > 0.0;
  if (p >= s.P) {
    f.boundary = true;
    f.exact = true;
    return f;
  }
  f.radicand = exact_radicand(s, u, rho, p);
  f.exact = f.radicand >= -radicand_slack(s, u, rho, p);
  return f;
}

/// Per-user flags for whether the relay can zero-force the cross link at this
/// allocation, and whether the low-power linearization is defined.
inline Feasibility feasibility(const ChannelSetup& s, const PowerAllocation& a) noexcept {
  return {user_feasibility(s, a, User::first), user_feasibility(s, a, User::second)};
}

/// Reference instance: h11 = h22 = 1.2, h12 = h21 = 0.5, g1R = [0.6 1.2],
/// g2R = [1 0.5], hR1 = [0.5 1], hR2 = [1 2], P = PR = 0.1.
/// Note det([hR1 hR2]) = 0 for this instance.
inline ChannelSetup paper_example() {
  ChannelSetup s;
  s.h11 = 1.2;
  s.h22 = 1.2;
  s.h12 = 0.5;
  s.h21 = 0.5;
  s.g1R = {0.6, 1.2};
  s.g2R = {1.0, 0.5};
  s.hR1 = {0.5, 1.0};
  s.hR2 = {1.0, 2.0};
  s.P = 0.1;
  s.PR = 0.1;
  return s;
}

inline ChannelSetup with_powers(ChannelSetup s, double P, double PR) {
  s.P = P;
  s.PR = PR;
  return s;
}

}  // namespace imrc

#endif  // IMRC_MODEL_HPP
