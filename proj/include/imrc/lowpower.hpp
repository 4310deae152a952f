#ifndef IMRC_LOWPOWER_HPP
#define IMRC_LOWPOWER_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "imrc/beamforming.hpp"
#include "imrc/hull.hpp"
#include "imrc/model.hpp"
#include "imrc/rates.hpp"

namespace imrc {

/// First-order model of one user's effective direct gain,
/// f_ii ~ mu + nu p_i / P, plus the derived quantities of the closed form.
struct UserCoeffs {
  double mu = 0.0;
  double nu = 0.0;
  double S = 0.0;       // sqrt(rho_i PR ||hRj||^2 / P - h_ij^2)
  double lambda = 0.0;  // 2 mu nu - mu^2 - ||g_iR||^2
};

struct ApproxCoeffs {
  double mu11 = 0.0, nu11 = 0.0;
  double mu22 = 0.0, nu22 = 0.0;
  double S1 = 0.0, S2 = 0.0;
  double lambda1 = 0.0, lambda2 = 0.0;

  UserCoeffs operator[](User u) const noexcept {
    if (u == User::first) return {mu11, nu11, S1, lambda1};
    return {mu22, nu22, S2, lambda2};
  }
};

/// Linearization of f_ii around p_i = 0 for one user. Uses 1/(P - p) ~
/// (1 + p/P)/P and a first-order expansion of the beamforming square root:
///
///   mu = h_ii - hRi,2 h_ij / hRj,2 + n D/||hRj||^2 (S - n h_ij hRj,1 / hRj,2)
///   nu = n rho PR D / (2 P S)
///
/// with D = det([hRi hRj]) (so D = det(H) for user 1 and -det(H) for user 2).
/// When |hRj,2| < |hRj,1| the same expression is evaluated with the antenna
/// indices exchanged and n negated, which yields identical coefficients.
inline UserCoeffs user_taylor_coeffs(const ChannelSetup& s, User u, double rho_i, Sign n) {
  const UserView v = view(s, u);
  detail::require_nonzero(v.hRj);
  if (!(s.P > 0.0)) throw Error(ErrorCode::LinearizationInfeasible, "linearization needs P > 0");
  const double rad = linearization_radicand(s, u, rho_i);
  if (!(rad > 0.0))
    throw Error(ErrorCode::LinearizationInfeasible,
                "user " + std::to_string(index(u)) + ": rho_i PR ||hRj||^2 / P <= h_ij^2");

  Vec2 hRi = v.hRi;
  Vec2 hRj = v.hRj;
  double nn = value(n);
  if (std::abs(hRj.a2) < std::abs(hRj.a1)) {
    hRi = {hRi.a2, hRi.a1};
    hRj = {hRj.a2, hRj.a1};
    nn = -nn;
  }
  const double D = cross(hRi, hRj);
  const double q = norm2(hRj);

  UserCoeffs c;
  c.S = std::sqrt(rad);
  c.mu = v.h_ii - hRi.a2 * v.h_ij / hRj.a2 + nn * D / q * (c.S - nn * v.h_ij * hRj.a1 / hRj.a2);
  c.nu = nn * rho_i * s.PR * D / (2.0 * s.P * c.S);
  c.lambda = 2.0 * c.mu * c.nu - c.mu * c.mu - norm2(v.giR);
  return c;
}

inline ApproxCoeffs taylor_coeffs(const ChannelSetup& s, double rho1, Sign n1, Sign n2) {
  const UserCoeffs c1 = user_taylor_coeffs(s, User::first, rho1, n1);
  const UserCoeffs c2 = user_taylor_coeffs(s, User::second, 1.0 - rho1, n2);
  return {c1.mu, c1.nu, c2.mu, c2.nu, c1.S, c2.S, c1.lambda, c2.lambda};
}

/// mu + nu p / P.
inline double approx_direct_gain(const UserCoeffs& c, double P, double p) noexcept { return c.mu + c.nu * p / P; }

/// Beam vector with the square root replaced by its first-order expansion
/// S + rho PR ||hRj||^2 / (2 P S) * p / P.
inline Vec2 approx_beam_vector(const ChannelSetup& s, User u, double rho_i, double p_i, Sign n) {
  const UserView v = view(s, u);
  const UserCoeffs c = user_taylor_coeffs(s, u, rho_i, n);
  const double slope = rho_i * s.PR * norm2(v.hRj) / (2.0 * s.P * c.S);
  return detail::zero_forcing_vector(v.h_ij, v.hRj, n, c.S + slope * p_i / s.P);
}

// r_i^MAC = ||g_iR||^2 p_i / ln 2
inline double linear_mac_rate(double g2, double p) noexcept { return g2 * p / std::numbers::ln2; }

// r_i^IC = (mu^2 P + (2 mu nu - mu^2) p - 2 mu nu p^2 / P) / ln 2
inline double linear_ic_rate(const UserCoeffs& c, double P, double p) noexcept {
  const double mn = c.mu * c.nu;
  const double m2 = c.mu * c.mu;
  return (m2 * P + (2.0 * mn - m2) * p - 2.0 * mn * p * p / P) / std::numbers::ln2;
}

struct LinearizedRates {
  double r1mac = 0.0;
  double r2mac = 0.0;
  double r1ic = 0.0;
  double r2ic = 0.0;
};

inline LinearizedRates linearized_rates(const ApproxCoeffs& c, const ChannelSetup& s, double p1, double p2) noexcept {
  return {linear_mac_rate(norm2(s.g1R), p1), linear_mac_rate(norm2(s.g2R), p2),
          linear_ic_rate(c[User::first], s.P, p1), linear_ic_rate(c[User::second], s.P, p2)};
}

struct UserPhat {
  double p = 0.0;
  bool clamped = false;  // raw root fell outside [0, P]
};

/// Power where the linearized relay and destination rates meet:
///   p_hat = (lambda + sqrt(lambda^2 + 8 mu^2 mu nu)) / (4 mu nu) * P.
/// Evaluated as 2 mu^2 / (sqrt(disc) - lambda) when lambda <= 0, which is the
/// same root without cancellation and reduces to mu^2 P / (mu^2 + ||g||^2)
/// when mu nu = 0.
inline UserPhat user_phat(const UserCoeffs& c, double g2, double P) noexcept {
  const double mn = c.mu * c.nu;
  const double m2 = c.mu * c.mu;
  double x = 0.0;
  if (mn == 0.0) {
    x = m2 / (m2 + g2);
  } else {
    const double disc = std::max(0.0, c.lambda * c.lambda + 8.0 * m2 * mn);
    const double root = std::sqrt(disc);
    x = c.lambda <= 0.0 ? 2.0 * m2 / (root - c.lambda) : (c.lambda + root) / (4.0 * mn);
  }
  UserPhat r;
  r.clamped = !(x >= 0.0 && x <= 1.0);
  r.p = std::clamp(std::isfinite(x) ? x : 0.0, 0.0, 1.0) * P;
  return r;
}

struct Phat {
  double p1 = 0.0;
  double p2 = 0.0;
  bool clamped1 = false;
  bool clamped2 = false;
};

inline Phat closed_form_phat(const ApproxCoeffs& c, const ChannelSetup& s) noexcept {
  const UserPhat a = user_phat(c[User::first], norm2(s.g1R), s.P);
  const UserPhat b = user_phat(c[User::second], norm2(s.g2R), s.P);
  return {a.p, b.p, a.clamped, b.clamped};
}

struct UserChoice {
  Sign n = Sign::plus;
  double p = 0.0;
  UserCoeffs coeffs;
};

/// Branch maximizing p_hat for one user; ties go to n = +1. Empty when the
/// linearization is infeasible (the S radicand does not depend on n).
inline std::optional<UserChoice> best_sign_user(const ChannelSetup& s, User u, double rho_i) {
  if (!(s.P > 0.0) || !(linearization_radicand(s, u, rho_i) > 0.0)) return std::nullopt;
  const double g2 = norm2(view(s, u).giR);
  const UserCoeffs plus = user_taylor_coeffs(s, u, rho_i, Sign::plus);
  const UserCoeffs minus = user_taylor_coeffs(s, u, rho_i, Sign::minus);
  const double p_plus = user_phat(plus, g2, s.P).p;
  const double p_minus = user_phat(minus, g2, s.P).p;
  if (p_minus > p_plus) return UserChoice{Sign::minus, p_minus, minus};
  return UserChoice{Sign::plus, p_plus, plus};
}

struct SignPowers {
  Sign n1 = Sign::plus;
  Sign n2 = Sign::plus;
  double p1 = 0.0;
  double p2 = 0.0;
};

inline SignPowers best_sign_powers(const ChannelSetup& s, double rho1) {
  const auto u1 = best_sign_user(s, User::first, rho1);
  const auto u2 = best_sign_user(s, User::second, 1.0 - rho1);
  if (!u1 || !u2)
    throw Error(ErrorCode::LinearizationInfeasible,
                std::string("no feasible branch for user ") + (!u1 ? "1" : "2"));
  return {u1->n, u2->n, u1->p, u2->p};
}

/// Axis-aligned rate rectangle [0, R1max] x [0, R2max] for one relay split.
/// A user whose linearization is infeasible gets bound 0 and feasibleN false.
struct RateRectangle {
  double rho1 = 0.0;
  double R1max = 0.0;
  double R2max = 0.0;
  bool feasible1 = false;
  bool feasible2 = false;
  SignPowers choice;

  bool any_feasible() const noexcept { return feasible1 || feasible2; }
};

inline RateRectangle region_rho(const ChannelSetup& s, double rho1) {
  RateRectangle r;
  r.rho1 = rho1;
  if (const auto u1 = best_sign_user(s, User::first, rho1)) {
    r.feasible1 = true;
    r.choice.n1 = u1->n;
    r.choice.p1 = u1->p;
    r.R1max = linear_mac_rate(norm2(s.g1R), u1->p);
  }
  if (const auto u2 = best_sign_user(s, User::second, 1.0 - rho1)) {
    r.feasible2 = true;
    r.choice.n2 = u2->n;
    r.choice.p2 = u2->p;
    r.R2max = linear_mac_rate(norm2(s.g2R), u2->p);
  }
  return r;
}

/// {k / (n + 1) : k = 1..n}; n = 99 gives 0.01, 0.02, ..., 0.99.
inline std::vector<double> rho_grid(int n = 99) {
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(std::max(n, 0)));
  for (int k = 1; k <= n; ++k) g.push_back(static_cast<double>(k) / static_cast<double>(n + 1));
  return g;
}

struct RateRegion {
  std::vector<Point2> vertices;           // convex, counterclockwise
  std::vector<RateRectangle> rectangles;  // the feasible rectangles that were merged
};

/// Convex hull of the origin and the corners of every feasible R_rho.
inline RateRegion full_region(const ChannelSetup& s, std::span<const double> rhos) {
  RateRegion region;
  std::vector<Point2> pts{{0.0, 0.0}};
  for (double rho : rhos) {
    const RateRectangle r = region_rho(s, rho);
    if (!r.any_feasible()) continue;
    region.rectangles.push_back(r);
    pts.push_back({r.R1max, 0.0});
    pts.push_back({0.0, r.R2max});
    pts.push_back({r.R1max, r.R2max});
  }
  if (region.rectangles.empty()) throw Error(ErrorCode::NoFeasibleRho, "no relay split in the grid is feasible");
  region.vertices = hull2d(pts);
  return region;
}

/// The closed-form operating point: for each rho on the grid with both users
/// feasible, take the sign-optimal p_hat, and keep the rho maximizing the
/// linearized sum rate. Ties go to the smaller rho.
struct ClosedFormChoice {
  PowerAllocation alloc;
  double linear_sum = 0.0;  // (||g1R||^2 p1 + ||g2R||^2 p2) / ln 2
};

inline ClosedFormChoice closed_form_allocation(const ChannelSetup& s, std::span<const double> rhos) {
  std::optional<ClosedFormChoice> best;
  for (double rho : rhos) {
    const RateRectangle r = region_rho(s, rho);
    if (!r.feasible1 || !r.feasible2) continue;
    const double sum = r.R1max + r.R2max;
    if (!best || sum > best->linear_sum) {
      best = ClosedFormChoice{{r.choice.p1, r.choice.p2, rho, r.choice.n1, r.choice.n2}, sum};
    }
  }
  if (!best) throw Error(ErrorCode::NoFeasibleRho, "no relay split linearizes both users");
  return *best;
}

}  // namespace imrc

#endif  // IMRC_LOWPOWER_HPP
