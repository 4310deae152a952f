// Command-line front end for the interference relay channel toolkit.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "imrc/imrc.hpp"

namespace {

using namespace imrc;

constexpr int kUsageError = 1;
constexpr int kComputeError = 2;

struct Options {
  std::string channel = "paper-example";
  std::string P;
  std::string PR;
  double rho = 0.5;
  double p1 = 0.0;
  double p2 = 0.0;
  int n1 = 1;
  int n2 = 1;
  long long B = 0;
  std::string grid;
  std::string range = "-30:20:1";
  std::string out;
};

Sign to_sign(int n) {
  if (n != 1 && n != -1) throw Error(ErrorCode::ConfigError, "branch signs must be 1 or -1");
  return n > 0 ? Sign::plus : Sign::minus;
}

ChannelSetup load(const Options& o) {
  ChannelSetup s = load_channel(o.channel);
  if (!o.P.empty()) s.P = parse_power(o.P);
  if (!o.PR.empty()) s.PR = parse_power(o.PR);
  return validate(s);
}

GridSpec grid_of(const Options& o) {
  GridSpec g;
  if (!o.grid.empty()) std::tie(g.n_p, g.n_rho) = parse_grid(o.grid);
  return g;
}

PowerAllocation alloc_of(const Options& o, const ChannelSetup& s) {
  PowerAllocation a{o.p1, o.p2, o.rho, to_sign(o.n1), to_sign(o.n2)};
  check_allocation(s, a);
  return a;
}

void emit(const Options& o, const Table& t, bool to_stdout_if_no_file) {
  if (!o.out.empty()) {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw Error(ErrorCode::ConfigError, "cannot write " + o.out);
    write_csv(f, t);
  } else if (to_stdout_if_no_file) {
    write_csv(std::cout, t);
  }
  for (const auto& [k, v] : t.summary) std::cerr << k << " = " << format_number(v) << '\n';
}

std::string fmt(double v) { return format_number(v); }
std::string fmt(const Vec2& v) { return "[" + fmt(v.a1) + ", " + fmt(v.a2) + "]"; }

int cmd_validate(const Options& o) {
  const ChannelSetup s = load(o);
  std::cout << "channel ok\n"
            << "||g1R||^2 = " << fmt(norm2(s.g1R)) << "\n||g2R||^2 = " << fmt(norm2(s.g2R))
            << "\ndet(H) = " << fmt(relay_det(s)) << "\nP = " << fmt(s.P) << "\nPR = " << fmt(s.PR) << '\n';
  const Feasibility f = feasibility(s, {o.p1, o.p2, o.rho, Sign::plus, Sign::plus});
  for (User u : {User::first, User::second}) {
    const UserFeasibility& uf = f[u];
    std::cout << "user " << index(u) << ": exact " << (uf.exact ? "feasible" : "infeasible")
              << (uf.boundary ? " (boundary)" : "") << ", radicand " << fmt(uf.radicand) << ", linearization "
              << (uf.linearization ? "feasible" : "infeasible") << '\n';
  }
  return 0;
}

int cmd_beam(const Options& o) {
  const ChannelSetup s = load(o);
  const PowerAllocation a = alloc_of(o, s);
  const BeamVectors b = beam_vectors(s, a);
  const EffectiveChannel e = effective_gains(s, a);
  std::cout << "t10 = " << fmt(b.t10) << (b.boundary1 ? " (boundary)" : "") << '\n'
            << "t20 = " << fmt(b.t20) << (b.boundary2 ? " (boundary)" : "") << '\n'
            << "f11 = " << fmt(e.f11) << "\nf22 = " << fmt(e.f22) << "\nf12 = " << fmt(e.f12)
            << "\nf21 = " << fmt(e.f21) << '\n'
            << "residual1 = " << fmt(zero_forcing_residual(s, a, User::first)) << '\n'
            << "residual2 = " << fmt(zero_forcing_residual(s, a, User::second)) << '\n';
  Table t;
  t.header = {"t10_1", "t10_2", "t20_1", "t20_2", "f11", "f22", "f12", "f21"};
  t.rows.push_back({b.t10.a1, b.t10.a2, b.t20.a1, b.t20.a2, e.f11, e.f22, e.f12, e.f21});
  emit(o, t, false);
  return 0;
}

int cmd_rates(const Options& o) {
  const ChannelSetup s = load(o);
  const PowerAllocation a = alloc_of(o, s);
  const SchemeRates r = scheme_rate_point(s, a);
  const RatePoint ap = abundant_power_rates(s, a);
  std::cout << "R1mac = " << fmt(r.mac.R1mac) << "\nR2mac = " << fmt(r.mac.R2mac)
            << "\nRsum_mac = " << fmt(r.mac.Rsum_mac) << "\nRsum_mac_expanded = " << fmt(mac_sum_expanded(s, a.p1, a.p2))
            << "\nR1ic = " << fmt(r.ic.R1) << "\nR2ic = " << fmt(r.ic.R2) << "\nR1ap = " << fmt(ap.R1)
            << "\nR2ap = " << fmt(ap.R2) << "\nR1 = " << fmt(r.point.R1) << "\nR2 = " << fmt(r.point.R2)
            << "\nsum = " << fmt(r.sum) << (r.capped ? " (sum cap binds)" : "") << '\n';
  Table t;
  t.header = {"R1mac", "R2mac", "Rsum_mac", "R1ic", "R2ic", "R1ap", "R2ap", "R1", "R2", "R1_blocks", "R2_blocks"};
  std::optional<double> b1, b2;
  if (o.B != 0) {
    const RatePoint pen = block_penalty(r.point, o.B);
    b1 = pen.R1;
    b2 = pen.R2;
    std::cout << "B = " << o.B << ": R1 = " << fmt(pen.R1) << ", R2 = " << fmt(pen.R2) << '\n';
  }
  t.rows.push_back({r.mac.R1mac, r.mac.R2mac, r.mac.Rsum_mac, r.ic.R1, r.ic.R2, ap.R1, ap.R2, r.point.R1, r.point.R2,
                    b1, b2});
  emit(o, t, false);
  return 0;
}

int cmd_phat(const Options& o) {
  const ChannelSetup s = load(o);
  const SignPowers best = best_sign_powers(s, o.rho);
  const ApproxCoeffs c = taylor_coeffs(s, o.rho, best.n1, best.n2);
  std::cout << "n1 = " << value(best.n1) << "\nn2 = " << value(best.n2) << "\nphat1 = " << fmt(best.p1)
            << "\nphat2 = " << fmt(best.p2) << "\nphat1_over_P = " << fmt(best.p1 / s.P)
            << "\nphat2_over_P = " << fmt(best.p2 / s.P) << "\nmu11 = " << fmt(c.mu11) << "\nnu11 = " << fmt(c.nu11)
            << "\nmu22 = " << fmt(c.mu22) << "\nnu22 = " << fmt(c.nu22) << "\nS1 = " << fmt(c.S1)
            << "\nS2 = " << fmt(c.S2) << "\nlambda1 = " << fmt(c.lambda1) << "\nlambda2 = " << fmt(c.lambda2)
            << "\nR1max = " << fmt(linear_mac_rate(norm2(s.g1R), best.p1))
            << "\nR2max = " << fmt(linear_mac_rate(norm2(s.g2R), best.p2)) << '\n';
  Table t;
  t.header = {"rho1", "n1", "n2", "phat1", "phat2", "mu11", "nu11", "mu22", "nu22", "S1", "S2", "lambda1", "lambda2"};
  t.rows.push_back({o.rho, value(best.n1), value(best.n2), best.p1, best.p2, c.mu11, c.nu11, c.mu22, c.nu22, c.S1, c.S2,
                    c.lambda1, c.lambda2});
  emit(o, t, false);
  return 0;
}

int cmd_region(const Options& o) {
  const ChannelSetup s = load(o);
  const RateRegion region = full_region(s, rho_grid(grid_of(o).n_rho));
  Table t;
  t.header = {"R1", "R2"};
  std::cout << "vertices (counterclockwise):\n";
  for (const Point2& v : region.vertices) {
    std::cout << "  (" << fmt(v.x) << ", " << fmt(v.y) << ")\n";
    t.rows.push_back({v.x, v.y});
  }
  std::cout << "feasible splits: " << region.rectangles.size() << '\n';
  emit(o, t, false);
  return 0;
}

SweepTable run_sweep(const Options& o, const ChannelSetup& s) {
  SweepPolicy policy;
  policy.grid = grid_of(o);
  if (!o.PR.empty()) policy.fixed_PR = parse_power(o.PR);
  const auto powers = parse_db_range(o.range);
  return sweep_P(s, powers, policy);
}

int cmd_sweep(const Options& o) {
  const ChannelSetup s = load(o);
  emit(o, sweep_table(run_sweep(o, s)), true);
  return 0;
}

int cmd_figure(const Options& o, int which) {
  const ChannelSetup s = load(o);
  Table t;
  switch (which) {
    case 2: t = figure2(s, o.rho, to_sign(o.n1)); break;
    case 3: t = figure3(s, o.rho, o.p2 > 0.0 ? o.p2 : 1e-4); break;
    case 4: t = figure4(run_sweep(o, s)); break;
    case 5: t = figure5(s, run_sweep(o, s)); break;
    default: throw Error(ErrorCode::ConfigError, "figure must be 2, 3, 4 or 5");
  }
  emit(o, t, true);
  return 0;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--channel", o.channel, "config file path or 'paper-example'");
  cmd->add_option("--P", o.P, "transmit power budget, linear or with a dB suffix");
  cmd->add_option("--PR", o.PR, "relay power budget, linear or with a dB suffix");
  cmd->add_option("--out", o.out, "write CSV here");
}

void add_alloc(CLI::App* cmd, Options& o) {
  cmd->add_option("--rho", o.rho, "relay power fraction for user 1")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--p1", o.p1, "new-message power of user 1");
  cmd->add_option("--p2", o.p2, "new-message power of user 2");
  cmd->add_option("--n1", o.n1, "beamforming branch of user 1 (1 or -1)");
  cmd->add_option("--n2", o.n2, "beamforming branch of user 2 (1 or -1)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate regions and power allocation for the interference channel with a two-antenna relay"};
  app.require_subcommand(1);
  Options o;
  int figure = 0;

  auto* validate_cmd = app.add_subcommand("validate", "check a channel setup and report feasibility");
  add_common(validate_cmd, o);
  add_alloc(validate_cmd, o);

  auto* beam_cmd = app.add_subcommand("beam", "relay beam vectors and effective gains");
  add_common(beam_cmd, o);
  add_alloc(beam_cmd, o);

  auto* rates_cmd = app.add_subcommand("rates", "relay, destination and scheme rates for one allocation");
  add_common(rates_cmd, o);
  add_alloc(rates_cmd, o);
  rates_cmd->add_option("--B", o.B, "number of blocks for the (B-1)/B penalty");

  auto* phat_cmd = app.add_subcommand("phat", "closed-form low-power allocation for one relay split");
  add_common(phat_cmd, o);
  phat_cmd->add_option("--rho", o.rho, "relay power fraction for user 1")->check(CLI::Range(0.0, 1.0));

  auto* region_cmd = app.add_subcommand("region", "convex hull of the low-power rate rectangles");
  add_common(region_cmd, o);
  region_cmd->add_option("--grid", o.grid, "<n_p>x<n_rho>; only n_rho is used");

  auto* sweep_cmd = app.add_subcommand("sweep", "compare allocation strategies across transmit powers");
  add_common(sweep_cmd, o);
  sweep_cmd->add_option("--grid", o.grid, "<n_p>x<n_rho> search grid");
  sweep_cmd->add_option("--range", o.range, "start:stop:step in dB");

  auto* figure_cmd = app.add_subcommand("figure", "data behind the reference figures");
  figure_cmd->add_option("which", figure, "2, 3, 4 or 5")->required()->check(CLI::IsMember({2, 3, 4, 5}));
  add_common(figure_cmd, o);
  figure_cmd->add_option("--rho", o.rho, "relay power fraction for user 1")->check(CLI::Range(0.0, 1.0));
  figure_cmd->add_option("--n1", o.n1, "beamforming branch for figure 2");
  figure_cmd->add_option("--p2", o.p2, "user-2 power for figure 3 (default 1e-4)");
  figure_cmd->add_option("--grid", o.grid, "<n_p>x<n_rho> search grid");
  figure_cmd->add_option("--range", o.range, "start:stop:step in dB");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*validate_cmd) return cmd_validate(o);
    if (*beam_cmd) return cmd_beam(o);
    if (*rates_cmd) return cmd_rates(o);
    if (*phat_cmd) return cmd_phat(o);
    if (*region_cmd) return cmd_region(o);
    if (*sweep_cmd) return cmd_sweep(o);
    if (*figure_cmd) return cmd_figure(o, figure);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    const bool usage = e.code() == ErrorCode::ConfigError || e.code() == ErrorCode::InvalidAllocation ||
                       e.code() == ErrorCode::BadGrid || e.code() == ErrorCode::BadBlockCount ||
                       e.code() == ErrorCode::NonFinite || e.code() == ErrorCode::NegativePower;
    return usage ? kUsageError : kComputeError;
  }
  return kUsageError;
}
