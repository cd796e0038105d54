#pragma once

// Flat key = value run configuration with '#' comments. Every key mirrors a
// RunConfig field; unknown keys are rejected so typos fail loudly.

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gwig {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double a = 1.0;
  double beta = 10.0;
  double w = 2.0;
  std::vector<double> z = {1.0, 1.0, 1.0, 1.0};

  std::size_t grid_n = 2000;
  double grid_r_max = 20.0;

  std::string out_csv = "particle.csv";
  std::string out_svg = "particle.svg";
  std::string out_report = "report.txt";

  std::uint64_t seed = 0;

  // dimensional reconstruction (opt-in; NaN = non-dimensional output only)
  double Q = std::nan("");
  double epsilon0 = std::nan("");

  // wave study block
  std::size_t wave_nx = 129;
  std::size_t wave_levels = 4;
  std::string wave_lambda = "bump";  // none | bump | moving

  // metric command block
  std::vector<double> metric_g = {1.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0,
                                  0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0, -1.0};
  double metric_kappa = 0.5;
  std::vector<double> metric_z;  // defaults to z when empty

  void validate() const {
    if (!(a > 0.0)) throw ConfigError("config: a must be > 0");
    if (!(beta > 0.0)) throw ConfigError("config: beta must be > 0");
    if (!(w > 0.0)) throw ConfigError("config: w must be > 0");
    if (z.empty()) throw ConfigError("config: z must be non-empty");
    if (grid_n < 8) throw ConfigError("config: grid_n must be >= 8");
    if (!(grid_r_max > 0.0)) throw ConfigError("config: grid_r_max must be > 0");
    if (wave_levels < 3) throw ConfigError("config: wave_levels must be >= 3");
    if (wave_nx < 9) throw ConfigError("config: wave_nx must be >= 9");
    if (wave_lambda != "none" && wave_lambda != "bump" && wave_lambda != "moving")
      throw ConfigError("config: wave_lambda must be none, bump, or moving");
    const std::size_t d2 = metric_g.size();
    std::size_t d = 0;
    while (d * d < d2) ++d;
    if (d * d != d2 || d < 1 || d > 8)
      throw ConfigError("config: metric_g must hold d*d entries with d in [1, 8]");
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing junk");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad numeric value for '" + key + "': " + v);
  }
}

inline std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size() || x < 0) throw std::invalid_argument("bad");
    return static_cast<std::uint64_t>(x);
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer value for '" + key + "': " + v);
  }
}

inline std::vector<double> parse_vec(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) throw ConfigError("config: empty entry in '" + key + "'");
    out.push_back(parse_double(key, tok));
  }
  if (out.empty()) throw ConfigError("config: empty list for '" + key + "'");
  return out;
}

}  // namespace detail

inline RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) + " is not key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string val = detail::trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ConfigError("config: line " + std::to_string(lineno) + " is not key = value");

    if (key == "a") cfg.a = detail::parse_double(key, val);
    else if (key == "beta") cfg.beta = detail::parse_double(key, val);
    else if (key == "w") cfg.w = detail::parse_double(key, val);
    else if (key == "z") cfg.z = detail::parse_vec(key, val);
    else if (key == "grid_n") cfg.grid_n = detail::parse_uint(key, val);
    else if (key == "grid_r_max") cfg.grid_r_max = detail::parse_double(key, val);
    else if (key == "out_csv") cfg.out_csv = val;
    else if (key == "out_svg") cfg.out_svg = val;
    else if (key == "out_report") cfg.out_report = val;
    else if (key == "seed") cfg.seed = detail::parse_uint(key, val);
    else if (key == "Q") cfg.Q = detail::parse_double(key, val);
    else if (key == "epsilon0") cfg.epsilon0 = detail::parse_double(key, val);
    else if (key == "wave_nx") cfg.wave_nx = detail::parse_uint(key, val);
    else if (key == "wave_levels") cfg.wave_levels = detail::parse_uint(key, val);
    else if (key == "wave_lambda") cfg.wave_lambda = val;
    else if (key == "metric_g") cfg.metric_g = detail::parse_vec(key, val);
    else if (key == "metric_kappa") cfg.metric_kappa = detail::parse_double(key, val);
    else if (key == "metric_z") cfg.metric_z = detail::parse_vec(key, val);
    else throw ConfigError("config: unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

inline RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace gwig
