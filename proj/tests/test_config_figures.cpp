#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "imrc/config.hpp"
#include "imrc/figures.hpp"

using namespace imrc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const char* kExample = R"(# worked example
h11 = 1.2
h12 = 0.5
h21: 0.5
h22 1.2
g1R = [0.6, 1.2]
g2R = 1.0 0.5
hR1 = [0.5 1.0]
hR2 = [1.0, 2.0]   # trailing comment
P = 0.1
PR = 0.1
)";

ErrorCode parse_error(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_channel_config(in);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a parse error");
  return ErrorCode::NonFinite;
}

}  // namespace

TEST_CASE("channel config parsing", "[config]") {
  std::istringstream in(kExample);
  const ChannelSetup s = parse_channel_config(in);
  const ChannelSetup p = paper_example();
  CHECK(s.h11 == p.h11);
  CHECK(s.h21 == p.h21);
  CHECK(s.h22 == p.h22);
  CHECK(s.g1R == p.g1R);
  CHECK(s.g2R == p.g2R);
  CHECK(s.hR1 == p.hR1);
  CHECK(s.hR2 == p.hR2);
  CHECK(s.P == p.P);
  CHECK(s.PR == p.PR);

  const std::string base(kExample);
  CHECK(parse_error(base + "h11 = 2\n") == ErrorCode::ConfigError);
  CHECK(parse_error(base + "foo = 2\n") == ErrorCode::ConfigError);
  CHECK(parse_error("h11 = 1\n") == ErrorCode::ConfigError);
  CHECK(parse_error(base.substr(0, base.find("P = 0.1"))) == ErrorCode::ConfigError);
}

TEST_CASE("config value errors", "[config]") {
  std::string text(kExample);
  text.replace(text.find("h12 = 0.5"), 9, "h12 = abc");
  std::istringstream in(text);
  CHECK_THROWS_AS(parse_channel_config(in), Error);

  std::string wide(kExample);
  wide.replace(wide.find("g1R = [0.6, 1.2]"), 16, "g1R = [0.6, 1.2, 3]");
  std::istringstream in2(wide);
  CHECK_THROWS_AS(parse_channel_config(in2), Error);
}

TEST_CASE("load_channel", "[config]") {
  CHECK(load_channel("paper-example").h11 == 1.2);
  try {
    load_channel("/nonexistent/channel.cfg");
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigError);
    CHECK(std::string(e.what()).find("/nonexistent/channel.cfg") != std::string::npos);
  }
}

TEST_CASE("power, grid and range parsing", "[config]") {
  CHECK(parse_power("0dB") == 1.0);
  CHECK_THAT(parse_power("-10dB"), WithinRel(0.1, 1e-15));
  CHECK_THAT(parse_power("20 dB"), WithinRel(100.0, 1e-15));
  CHECK(parse_power("0.25") == 0.25);
  CHECK_THROWS_AS(parse_power("loud"), Error);

  CHECK(parse_grid("101x99") == std::pair{101, 99});
  CHECK_THROWS_AS(parse_grid("101"), Error);
  CHECK_THROWS_AS(parse_grid("1x5"), Error);
  CHECK_THROWS_AS(parse_grid("10.5x5"), Error);

  const auto r = parse_db_range("-30:20:1");
  REQUIRE(r.size() == 51);
  CHECK_THAT(r.front(), WithinRel(1e-3, 1e-12));
  CHECK_THAT(r.back(), WithinRel(100.0, 1e-12));
  CHECK_THROWS_AS(parse_db_range("0:-1:1"), Error);
  CHECK_THROWS_AS(parse_db_range("0:1"), Error);
  CHECK_THAT(linear_to_db(db_to_linear(-17.0)), WithinAbs(-17.0, 1e-12));
}

TEST_CASE("CSV round trip", "[figures]") {
  Table t;
  t.header = {"a", "b", "c"};
  t.rows = {{1.0, 0.1, std::nullopt}, {-2.5e-7, 3.0, 123456.789}};
  std::ostringstream out;
  write_csv(out, t);
  CHECK(out.str() == "a,b,c\n1,0.1,\n-2.5e-07,3,123456.789\n");
  std::istringstream in(out.str());
  const Table back = read_csv(in);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("figure 2 tables", "[figures]") {
  const Table t = figure2(paper_example(), 0.5);
  REQUIRE(t.rows.size() == 100);
  REQUIRE(t.header.size() == 5);
  // exact and linearized vectors coincide at p1 = 0
  CHECK_THAT(*t.rows[0][1], WithinAbs(*t.rows[0][3], 1e-12));
  CHECK_THAT(*t.rows[0][2], WithinAbs(*t.rows[0][4], 1e-12));
  CHECK_THAT(*t.rows[0][1], WithinAbs(0.5, 1e-12));
  CHECK_THAT(*t.rows[0][2], WithinAbs(-0.5, 1e-12));
  CHECK(*t.rows[99][0] == 0.99);
}

TEST_CASE("figure 3 tables", "[figures]") {
  const ChannelSetup s = with_powers(paper_example(), 1e-3, 1e-3);
  const Table t = figure3(s, 0.5, 1e-6);
  REQUIRE(t.rows.size() == 100);
  REQUIRE(t.summary.size() == 4);
  CHECK_THAT(t.summary[1].second, WithinAbs(t.summary[2].second, 1e-6 * s.P));
  CHECK_THAT(t.summary[3].second, WithinRel(t.summary[1].second, 0.05));
  CHECK(*t.rows[0][1] == 0.0);
  CHECK_THROWS_AS(figure3(s, 0.0), Error);
}

TEST_CASE("figures 4 and 5 tables", "[figures]") {
  const std::vector<double> Ps{1e-3, 1e-2, 1.0};
  SweepPolicy policy;
  policy.grid = {21, 9};
  const ChannelSetup s = paper_example();
  const SweepTable sweep = sweep_P(s, Ps, policy);

  const Table f4 = figure4(sweep);
  REQUIRE(f4.rows.size() == 3);
  CHECK_THAT(*f4.rows[0][0], WithinAbs(-30.0, 1e-12));
  CHECK_THAT(*f4.rows[0][2], WithinRel(0.9025 / 2.7025, 0.2));

  const Table f5 = figure5(s, sweep);
  REQUIRE(f5.rows.size() == 3);
  CHECK_FALSE(f5.rows[0][4].has_value());
  CHECK(f5.rows[2][4].has_value());
  CHECK_THAT(sum_rate_normalizer(s, 1.0), WithinRel(2 * std::log2(2.44), 1e-14));

  const Table full = sweep_table(sweep);
  CHECK(full.header.size() == 17);
  CHECK(full.rows[0].size() == 17);
}
