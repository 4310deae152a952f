#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "imrc/search.hpp"
#include "oracles.hpp"

using namespace imrc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("convex hull", "[search][hull]") {
  SECTION("interior point is dropped") {
    const std::vector<Point2> pts{{0, 0}, {2, 0}, {0, 2}, {0.5, 0.5}};
    const auto h = hull2d(pts);
    REQUIRE(h.size() == 3);
    CHECK(h[0] == Point2{0, 0});
    CHECK(h[1] == Point2{2, 0});
    CHECK(h[2] == Point2{0, 2});
  }
  SECTION("collinear point on an edge is dropped") {
    const std::vector<Point2> pts{{0, 0}, {2, 0}, {0, 2}, {1, 1}};
    CHECK(hull2d(pts).size() == 3);
  }
  SECTION("two rectangles merge into a pentagon") {
    const std::vector<Point2> pts{{0, 0}, {2, 0}, {0, 1}, {2, 1}, {1, 0}, {0, 2}, {1, 2}};
    const auto h = hull2d(pts);
    const std::vector<Point2> want{{0, 0}, {2, 0}, {2, 1}, {1, 2}, {0, 2}};
    CHECK(h == want);
    CHECK(is_convex(h));
    CHECK(contains(h, {1.5, 1.5}));
    CHECK_FALSE(contains(h, {1.6, 1.6}));
  }
  SECTION("random clouds") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Point2> pts(1000);
      for (auto& p : pts) p = {U(rng), U(rng)};
      const auto h = hull2d(pts);
      CHECK(is_convex(h));
      for (const auto& p : pts) CHECK(contains(h, p, 1e-12));
      CHECK(hull2d(h) == h);
    }
  }
}

TEST_CASE("bisection", "[search]") {
  const double P = 0.3;
  CHECK_THAT(bisect_intersection([&](double p) { return p - P / 2; }, 0.0, P, 1e-15), WithinAbs(P / 2, 1e-14));
  try {
    bisect_intersection([](double p) { return p + 1.0; }, 0.0, 1.0, 1e-12);
    FAIL("expected NoSignChange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoSignChange);
  }
}

TEST_CASE("exact intersection meets both curves", "[search]") {
  const ChannelSetup s = with_powers(paper_example(), 1e-3, 1e-3);
  const PowerAllocation a{0.0, 1e-5, 0.5};
  const double p = exact_intersection(s, a, User::first);
  PowerAllocation at = a;
  at.p1 = p;
  CHECK_THAT(mac_rates(s, p, a.p2).R1mac, WithinRel(user_ic_rate(s, at, User::first), 1e-9));
}

TEST_CASE("grid helpers", "[search]") {
  const auto g = power_grid(2.0, {5, 1});
  CHECK(g == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});
  GridSpec open{4, 1};
  open.include_boundary = false;
  CHECK(power_grid(2.0, open) == std::vector<double>{0.0, 0.5, 1.0, 1.5});
  try {
    power_grid(1.0, {1, 1});
    FAIL("expected BadGrid");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadGrid);
  }
  CHECK_THROWS_AS(check_grid({5, 0}), Error);
}

TEST_CASE("grid search edge cases", "[search]") {
  SECTION("zero power gives zero rate") {
    const ChannelSetup s = with_powers(paper_example(), 0.0, 0.0);
    // P = 0 leaves only p = P, where zero-forcing needs no relay power.
    ChannelSetup t = s;
    t.PR = 1.0;
    const GridResult r = grid_search_sum_rate(t, {11, 9});
    CHECK(r.sum == 0.0);
  }
  SECTION("abundant relay power sends everything as new message") {
    ChannelSetup s = paper_example();
    s.hR1 = {1.0, 0.2};
    s.hR2 = {0.1, 1.0};
    s.P = 0.1;
    s.PR = 1e6;
    const GridResult r = grid_search_sum_rate(s, {21, 9});
    CHECK(r.alloc.p1 == s.P);
    CHECK(r.alloc.p2 == s.P);
  }
}

TEST_CASE("grid search properties", "[search][property]") {
  const ChannelSetup s = with_powers(paper_example(), 1e-2, 1e-2);
  SECTION("beats the closed form") {
    const GridResult g = grid_search_sum_rate(s, {101, 99});
    const double closed = scheme_rate_point(s, closed_form_allocation(s, rho_grid(99)).alloc).sum;
    CHECK(g.sum >= closed);
  }
  SECTION("nested grids are monotone without refinement") {
    GridSpec coarse{11, 9};
    coarse.refine = false;
    GridSpec fine{21, 19};
    fine.refine = false;
    CHECK(grid_search_sum_rate(s, fine).sum >= grid_search_sum_rate(s, coarse).sum);
  }
  SECTION("grid resolution barely matters") {
    const double a = grid_search_sum_rate(s, {101, 19}).sum;
    const double b = grid_search_sum_rate(s, {401, 19}).sum;
    CHECK_THAT(a, WithinRel(b, 0.02));
  }
  SECTION("result does not depend on the worker count") {
    GridSpec one{41, 19};
    one.threads = 1;
    GridSpec four = one;
    four.threads = 4;
    const GridResult a = grid_search_sum_rate(s, one);
    const GridResult b = grid_search_sum_rate(s, four);
    CHECK(a.sum == b.sum);
    CHECK(a.alloc == b.alloc);
  }
  SECTION("random setups: refinement never loses") {
    oracle::Generator gen(42);
    for (int i = 0; i < 5; ++i) {
      const ChannelSetup r = gen.setup();
      GridSpec plain{21, 9};
      plain.refine = false;
      const GridSpec polished{21, 9};
      CHECK(grid_search_sum_rate(r, polished).sum >= grid_search_sum_rate(r, plain).sum);
    }
  }
}

TEST_CASE("power sweep", "[search]") {
  const std::vector<double> Ps{1e-2, 0.1, 1.0, 4.0};
  SweepPolicy policy;
  policy.grid = {21, 9};
  const SweepTable t = sweep_P(paper_example(), Ps, policy);
  REQUIRE(t.size() == 4);
  for (const SweepRow& r : t) {
    CHECK(r.PR == r.P);
    CHECK(r.R_sum_exact >= r.R_sum_half);
    CHECK(r.R_sum_exact >= 0.0);
    CHECK(r.R_sum_sqrt.has_value() == (r.P >= 1.0));
  }

  policy.fixed_PR = 0.5;
  CHECK(sweep_P(paper_example(), std::span(Ps).first(1), policy)[0].PR == 0.5);

  const std::vector<double> bad{0.1, 0.1};
  CHECK_THROWS_AS(sweep_P(paper_example(), bad, policy), Error);
  CHECK_THROWS_AS(sweep_P(paper_example(), std::span<const double>{}, policy), Error);
}
