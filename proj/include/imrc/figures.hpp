#ifndef IMRC_FIGURES_HPP
#define IMRC_FIGURES_HPP

#include <cmath>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "imrc/beamforming.hpp"
#include "imrc/config.hpp"
#include "imrc/lowpower.hpp"
#include "imrc/model.hpp"
#include "imrc/rates.hpp"
#include "imrc/search.hpp"

namespace imrc {

/// Rectangular numeric table; a missing cell is written as an empty field.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::optional<double>>> rows;
  std::vector<std::pair<std::string, double>> summary;  // printed, not part of the CSV
};

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Header row, comma separated, 12 significant digits, LF endings.
inline void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (row[i]) out << format_number(*row[i]);
    }
    out << '\n';
  }
}

inline Table read_csv(std::istream& in) {
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::ConfigError, "empty CSV");
  {
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) t.header.push_back(f);
  }
  while (std::getline(in, line)) {
    std::vector<std::optional<double>> row;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      const std::string f = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (f.empty()) {
        row.emplace_back();
      } else {
        row.emplace_back(detail::parse_number(f, "csv"));
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (row.size() != t.header.size()) throw Error(ErrorCode::ConfigError, "CSV row width mismatch");
    t.rows.push_back(std::move(row));
  }
  return t;
}

namespace detail {

inline std::vector<double> unit_fractions() {
  std::vector<double> x;
  for (int k = 0; k <= 99; ++k) x.push_back(k / 100.0);
  return x;
}

}  // namespace detail

/// Exact and linearized components of t10 for p1/P in [0, 0.99].
inline Table figure2(const ChannelSetup& s, double rho1, Sign n1 = Sign::plus) {
  Table t;
  t.header = {"p1_over_P", "t10_1_exact", "t10_2_exact", "t10_1_approx", "t10_2_approx"};
  for (double x : detail::unit_fractions()) {
    const double p1 = x * s.P;
    const Vec2 exact = beam_vector(s, {p1, 0.0, rho1, n1, Sign::plus}, User::first);
    const Vec2 approx = approx_beam_vector(s, User::first, rho1, p1, n1);
    t.rows.push_back({x, exact.a1, exact.a2, approx.a1, approx.a2});
  }
  return t;
}

/// Linearized and exact relay/destination rate curves of user 1, with user 2
/// at a small fixed power. The summary carries the crossing points.
inline Table figure3(const ChannelSetup& s, double rho1, double p2 = 1e-4) {
  const auto choice = best_sign_user(s, User::first, rho1);
  if (!choice) throw Error(ErrorCode::LinearizationInfeasible, "user 1 cannot be linearized at this split");
  const double g2 = norm2(s.g1R);

  Table t;
  t.header = {"p1_over_P", "r1_mac", "r1_ic", "R1_mac_exact", "R1_ic_exact"};
  for (double x : detail::unit_fractions()) {
    const double p1 = x * s.P;
    const PowerAllocation a{p1, p2, rho1, choice->n, Sign::plus};
    t.rows.push_back({x, linear_mac_rate(g2, p1), linear_ic_rate(choice->coeffs, s.P, p1),
                      mac_rates(s, p1, p2).R1mac, user_ic_rate(s, a, User::first)});
  }
  const double crossing = linearized_intersection(choice->coeffs, g2, s.P);
  t.summary = {{"n1", value(choice->n)},
               {"phat1_closed", choice->p},
               {"phat1_intersection", crossing},
               {"phat1_exact_intersection", exact_intersection(s, {0.0, p2, rho1, choice->n, Sign::plus}, User::first)}};
  return t;
}

inline std::vector<double> default_sweep_powers() { return parse_db_range("-30:20:1"); }

inline Table sweep_table(const SweepTable& sweep) {
  Table t;
  t.header = {"P",        "P_dB",      "PR",        "best_rho1", "best_p1",      "best_p2",
              "best_n1",  "best_n2",   "R_sum_exact", "closed_rho1", "closed_p1", "closed_p2",
              "closed_n1", "closed_n2", "R_sum_closed", "R_sum_half", "R_sum_sqrt"};
  for (const SweepRow& r : sweep) {
    t.rows.push_back({r.P, linear_to_db(r.P), r.PR, r.best_alloc.rho1, r.best_alloc.p1, r.best_alloc.p2,
                      value(r.best_alloc.n1), value(r.best_alloc.n2), r.R_sum_exact, r.closed_alloc.rho1,
                      r.closed_alloc.p1, r.closed_alloc.p2, value(r.closed_alloc.n1), value(r.closed_alloc.n2),
                      r.R_sum_closed, r.R_sum_half, r.R_sum_sqrt});
  }
  return t;
}

/// Exhaustive-search and closed-form p1, normalized to P.
inline Table figure4(const SweepTable& sweep) {
  Table t;
  t.header = {"P_dB", "phat1_grid_over_P", "phat1_closed_over_P"};
  for (const SweepRow& r : sweep)
    t.rows.push_back({linear_to_db(r.P), r.best_alloc.p1 / r.P, r.closed_alloc.p1 / r.P});
  return t;
}

/// Sum rates normalized by log2(1 + h11^2 P) + log2(1 + h22^2 P).
inline double sum_rate_normalizer(const ChannelSetup& s, double P) noexcept {
  return log2_1p(s.h11 * s.h11 * P) + log2_1p(s.h22 * s.h22 * P);
}

inline Table figure5(const ChannelSetup& s, const SweepTable& sweep) {
  Table t;
  t.header = {"P_dB", "norm_sum_grid", "norm_sum_closed", "norm_sum_half", "norm_sum_sqrt"};
  for (const SweepRow& r : sweep) {
    const double z = sum_rate_normalizer(s, r.P);
    std::optional<double> sq;
    if (r.R_sum_sqrt) sq = *r.R_sum_sqrt / z;
    t.rows.push_back({linear_to_db(r.P), r.R_sum_exact / z, r.R_sum_closed / z, r.R_sum_half / z, sq});
  }
  return t;
}

}  // namespace imrc

#endif  // IMRC_FIGURES_HPP
