#ifndef IMRC_SEARCH_HPP
#define IMRC_SEARCH_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "imrc/hull.hpp"
#include "imrc/lowpower.hpp"
#include "imrc/model.hpp"
#include "imrc/rates.hpp"

namespace imrc {

struct GridSpec {
  int n_p = 101;                  // points per power axis
  int n_rho = 99;                 // relay splits, uniform over (0, 1)
  bool include_boundary = true;   // whether p_i = P is a grid point
  bool refine = true;             // polish each split's best point by pattern search
  unsigned threads = 0;           // 0: hardware concurrency, capped by IMRC_THREADS
};

inline void check_grid(const GridSpec& g) {
  if (g.n_p < 2) throw Error(ErrorCode::BadGrid, "need at least 2 points per power axis");
  if (g.n_rho < 1) throw Error(ErrorCode::BadGrid, "need at least 1 relay split");
}

/// Uniform power levels over [0, P] (boundary included) or [0, P).
inline std::vector<double> power_grid(double P, const GridSpec& g) {
  check_grid(g);
  std::vector<double> v(static_cast<std::size_t>(g.n_p));
  const double den = g.include_boundary ? g.n_p - 1 : g.n_p;
  for (int k = 0; k < g.n_p; ++k) v[static_cast<std::size_t>(k)] = P * (k / den);
  if (g.include_boundary) v.back() = P;
  return v;
}

/// Worker count: the request (or the hardware concurrency when 0), capped by
/// the IMRC_THREADS environment variable.
inline unsigned worker_count(unsigned requested = 0) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("IMRC_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
  }
  return std::max(1u, n);
}

/// Runs body(i) for i in [0, count) on up to `workers` threads.
template <typename Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) body(i);
    });
  }
}

struct GridResult {
  PowerAllocation alloc;
  double sum = 0.0;
  SchemeRates rates;
};

namespace detail {

inline auto order_key(const PowerAllocation& a) {
  return std::make_tuple(a.rho1, a.p1, a.p2, static_cast<int>(a.n1), static_cast<int>(a.n2));
}

// Larger sum wins; equal sums go to the lexicographically smaller allocation.
inline bool better(const GridResult& a, const GridResult& b) {
  if (a.sum != b.sum) return a.sum > b.sum;
  return order_key(a.alloc) < order_key(b.alloc);
}

inline std::optional<GridResult> evaluate(const ChannelSetup& s, const PowerAllocation& a) {
  if (!feasibility(s, a).exact()) return std::nullopt;
  try {
    GridResult r{a, 0.0, scheme_rate_point(s, a)};
    r.sum = r.rates.sum;
    return r;
  } catch (const Error&) {
    return std::nullopt;  // zero relay channel with nothing to cancel
  }
}

// Compass search over (p1, p2) at fixed split and signs, eight directions,
// halving the step whenever no neighbour improves.
inline GridResult polish(const ChannelSetup& s, GridResult best, double step, double upper) {
  static constexpr std::array<std::array<int, 2>, 8> dirs{
      {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
  const double min_step = 1e-14 * std::max(s.P, 1e-300);
  for (int iter = 0; iter < 4000 && step > min_step; ++iter) {
    std::optional<GridResult> move;
    for (const auto& d : dirs) {
      PowerAllocation a = best.alloc;
      a.p1 = std::clamp(a.p1 + d[0] * step, 0.0, upper);
      a.p2 = std::clamp(a.p2 + d[1] * step, 0.0, upper);
      if (a == best.alloc) continue;
      auto r = evaluate(s, a);
      if (r && r->sum > (move ? move->sum : best.sum)) move = r;
    }
    if (move) {
      best = *move;
    } else {
      step *= 0.5;
    }
  }
  return best;
}

}  // namespace detail

/// Exhaustive search of the exact scheme sum rate over the power grid, the
/// relay splits, and both beamforming branches of each user. Infeasible
/// points are skipped. With g.refine, the best point of every split is then
/// polished off-grid. The result does not depend on the worker count.
inline GridResult grid_search_sum_rate(const ChannelSetup& s, const GridSpec& g) {
  validate(s);
  const std::vector<double> ps = power_grid(s.P, g);
  const std::vector<double> rhos = rho_grid(g.n_rho);
  const double upper = ps.back();
  const double step = s.P / (g.n_p - 1);
  constexpr std::array<Sign, 2> signs{Sign::minus, Sign::plus};

  std::vector<std::optional<GridResult>> per_rho(rhos.size());
  parallel_for(rhos.size(), worker_count(g.threads), [&](std::size_t r) {
    std::optional<GridResult> best;
    for (double p1 : ps)
      for (double p2 : ps)
        for (Sign n1 : signs)
          for (Sign n2 : signs) {
            auto res = detail::evaluate(s, {p1, p2, rhos[r], n1, n2});
            if (res && (!best || detail::better(*res, *best))) best = res;
          }
    if (best && g.refine && s.P > 0.0) best = detail::polish(s, *best, step, upper);
    per_rho[r] = best;
  });

  std::optional<GridResult> best;
  for (const auto& r : per_rho)
    if (r && (!best || detail::better(*r, *best))) best = r;
  if (!best) throw Error(ErrorCode::NoFeasiblePoint, "no grid point admits zero-forcing beamforming");
  return *best;
}

/// Best exact sum rate for fixed powers, over the relay splits and branches.
inline std::optional<GridResult> best_over_split(const ChannelSetup& s, double p1, double p2,
                                                 std::span<const double> rhos) {
  std::optional<GridResult> best;
  for (double rho : rhos)
    for (Sign n1 : {Sign::minus, Sign::plus})
      for (Sign n2 : {Sign::minus, Sign::plus}) {
        auto res = detail::evaluate(s, {p1, p2, rho, n1, n2});
        if (res && (!best || detail::better(*res, *best))) best = res;
      }
  return best;
}

/// Interval halving on a continuous function with a sign change over [lo, hi].
/// Stops once the bracket is narrower than xtol.
inline double bisect_intersection(const std::function<double(double)>& diff, double lo, double hi, double xtol) {
  double flo = diff(lo);
  const double fhi = diff(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi) || std::isnan(flo) || std::isnan(fhi))
    throw Error(ErrorCode::NoSignChange, "curve difference does not change sign on the interval");
  for (int i = 0; i < 400 && hi - lo > xtol; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    const double fm = diff(mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

/// Crossing of the linearized relay and destination rate lines of one user.
inline double linearized_intersection(const UserCoeffs& c, double g2, double P, double tol = 1e-12) {
  return bisect_intersection([&](double p) { return linear_mac_rate(g2, p) - linear_ic_rate(c, P, p); }, 0.0, P,
                             tol * P);
}

/// Crossing of the exact R_i^MAC and R_i^IC curves of user u as p_i sweeps
/// [0, P], all other allocation entries held.
inline double exact_intersection(const ChannelSetup& s, PowerAllocation a, User u, double tol = 1e-12) {
  auto diff = [&](double p) {
    (u == User::first ? a.p1 : a.p2) = p;
    const MacRates mac = mac_rates(s, a.p1, a.p2);
    return (u == User::first ? mac.R1mac : mac.R2mac) - user_ic_rate(s, a, u);
  };
  return bisect_intersection(diff, 0.0, s.P, tol * s.P);
}

struct SweepPolicy {
  GridSpec grid;
  std::optional<double> fixed_PR;  // unset: PR tracks P
};

struct SweepRow {
  double P = 0.0;
  double PR = 0.0;
  PowerAllocation best_alloc;        // exhaustive search
  PowerAllocation closed_alloc;      // closed form with sign and split selection
  double R_sum_exact = 0.0;          // at best_alloc
  double R_sum_closed = 0.0;         // exact sum rate at closed_alloc
  double R_sum_half = 0.0;           // p1 = p2 = P / 2, best split and branches
  std::optional<double> R_sum_sqrt;  // p1 = p2 = sqrt(P), only for P >= 1
};

using SweepTable = std::vector<SweepRow>;

/// Compares the four power allocation strategies across transmit powers.
inline SweepTable sweep_P(const ChannelSetup& base, std::span<const double> P_values, const SweepPolicy& policy) {
  if (P_values.empty()) throw Error(ErrorCode::BadGrid, "empty power sweep");
  for (std::size_t i = 1; i < P_values.size(); ++i)
    if (!(P_values[i] > P_values[i - 1])) throw Error(ErrorCode::BadGrid, "power sweep must be strictly increasing");

  const std::vector<double> rhos = rho_grid(policy.grid.n_rho);
  SweepTable table;
  table.reserve(P_values.size());
  for (double P : P_values) {
    const ChannelSetup s = validate(with_powers(base, P, policy.fixed_PR.value_or(P)));
    SweepRow row;
    row.P = P;
    row.PR = s.PR;

    const GridResult best = grid_search_sum_rate(s, policy.grid);
    row.best_alloc = best.alloc;
    row.R_sum_exact = best.sum;

    const ClosedFormChoice closed = closed_form_allocation(s, rhos);
    row.closed_alloc = closed.alloc;
    row.R_sum_closed = scheme_rate_point(s, closed.alloc).sum;

    const auto half = best_over_split(s, P / 2, P / 2, rhos);
    if (!half) throw Error(ErrorCode::NoFeasiblePoint, "equal split P/2 infeasible for every relay split");
    row.R_sum_half = half->sum;

    if (P >= 1.0) {
      const auto sq = best_over_split(s, std::sqrt(P), std::sqrt(P), rhos);
      if (sq) row.R_sum_sqrt = sq->sum;
    }
    table.push_back(row);
  }
  return table;
}

}  // namespace imrc

#endif  // IMRC_SEARCH_HPP
