#ifndef IMRC_CONFIG_HPP
#define IMRC_CONFIG_HPP

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "imrc/error.hpp"
#include "imrc/model.hpp"

namespace imrc {

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_number(const std::string& tok, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ConfigError, what + ": '" + tok + "' is not a number");
  }
  if (used != tok.size()) throw Error(ErrorCode::ConfigError, what + ": trailing characters in '" + tok + "'");
  return v;
}

inline std::vector<std::string> split_numbers(std::string value) {
  for (char& c : value)
    if (c == ',' || c == '[' || c == ']') c = ' ';
  std::istringstream in(value);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

}  // namespace detail

/// Reads a channel setup from `key = value` lines. Keys: h11 h12 h21 h22 g1R
/// g2R hR1 hR2 P PR, all required. The separator may be '=', ':' or
/// whitespace; 2-vectors take two numbers separated by whitespace or a comma.
/// '#' starts a comment.
inline ChannelSetup parse_channel_config(std::istream& in) {
  static const std::vector<std::string> scalar_keys{"h11", "h12", "h21", "h22", "P", "PR"};
  static const std::vector<std::string> vector_keys{"g1R", "g2R", "hR1", "hR2"};
  std::map<std::string, std::vector<double>> seen;

  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto sep = line.find_first_of("=: \t");
    if (sep == std::string::npos)
      throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": missing value");
    const std::string key = detail::trim(line.substr(0, sep));
    std::string rest = detail::trim(line.substr(sep));
    if (!rest.empty() && (rest.front() == '=' || rest.front() == ':')) rest = detail::trim(rest.substr(1));

    const bool is_scalar = std::find(scalar_keys.begin(), scalar_keys.end(), key) != scalar_keys.end();
    const bool is_vector = std::find(vector_keys.begin(), vector_keys.end(), key) != vector_keys.end();
    if (!is_scalar && !is_vector)
      throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (seen.count(key)) throw Error(ErrorCode::ConfigError, "duplicate key '" + key + "'");

    const auto toks = detail::split_numbers(rest);
    const std::size_t want = is_scalar ? 1 : 2;
    if (toks.size() != want)
      throw Error(ErrorCode::ConfigError,
                  "key '" + key + "' expects " + std::to_string(want) + " number(s), got " + std::to_string(toks.size()));
    std::vector<double> vals;
    for (const auto& t : toks) vals.push_back(detail::parse_number(t, key));
    seen[key] = vals;
  }

  for (const auto* keys : {&scalar_keys, &vector_keys})
    for (const auto& k : *keys)
      if (!seen.count(k)) throw Error(ErrorCode::ConfigError, "missing key '" + k + "'");

  auto vec = [&](const char* k) { return Vec2{seen[k][0], seen[k][1]}; };
  ChannelSetup s;
  s.h11 = seen["h11"][0];
  s.h12 = seen["h12"][0];
  s.h21 = seen["h21"][0];
  s.h22 = seen["h22"][0];
  s.g1R = vec("g1R");
  s.g2R = vec("g2R");
  s.hR1 = vec("hR1");
  s.hR2 = vec("hR2");
  s.P = seen["P"][0];
  s.PR = seen["PR"][0];
  return s;
}

/// `paper-example` or a path to a config file.
inline ChannelSetup load_channel(const std::string& source) {
  if (source == "paper-example") return paper_example();
  std::ifstream in(source);
  if (!in) throw Error(ErrorCode::ConfigError, "file not found: " + source);
  return parse_channel_config(in);
}

inline double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) noexcept { return 10.0 * std::log10(x); }

/// "0.1" is linear; "-10dB" (any case) is converted.
inline double parse_power(std::string text) {
  text = detail::trim(text);
  if (text.size() > 2) {
    std::string tail = text.substr(text.size() - 2);
    std::transform(tail.begin(), tail.end(), tail.begin(), [](unsigned char c) { return std::tolower(c); });
    if (tail == "db") return db_to_linear(detail::parse_number(detail::trim(text.substr(0, text.size() - 2)), "power"));
  }
  return detail::parse_number(text, "power");
}

/// "<n_p>x<n_rho>", e.g. "101x99".
inline std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw Error(ErrorCode::ConfigError, "grid must look like 101x99");
  const double np = detail::parse_number(text.substr(0, x), "grid");
  const double nr = detail::parse_number(text.substr(x + 1), "grid");
  if (np != std::floor(np) || nr != std::floor(nr) || np < 2 || nr < 1)
    throw Error(ErrorCode::ConfigError, "grid sizes must be integers with n_p >= 2, n_rho >= 1");
  return {static_cast<int>(np), static_cast<int>(nr)};
}

/// "start:stop:step" in dB, inclusive of stop. Returns linear powers.
inline std::vector<double> parse_db_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(detail::trim(p));
  if (parts.size() != 3) throw Error(ErrorCode::ConfigError, "range must look like -30:20:1");
  const double a = detail::parse_number(parts[0], "range");
  const double b = detail::parse_number(parts[1], "range");
  const double step = detail::parse_number(parts[2], "range");
  if (!(step > 0.0) || b < a) throw Error(ErrorCode::ConfigError, "range needs step > 0 and stop >= start");
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((b - a) / step + 1e-9));
  for (long k = 0; k <= n; ++k) out.push_back(db_to_linear(a + static_cast<double>(k) * step));
  return out;
}

}  // namespace imrc

#endif  // IMRC_CONFIG_HPP
