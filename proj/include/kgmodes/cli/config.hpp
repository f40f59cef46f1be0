#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "kgmodes/ads_modes.hpp"
#include "kgmodes/errors.hpp"

namespace kgm::cli {

struct sweep_config {
  int d = 3;
  double Delta = 4.2;
  double R = 1.0;
  std::string omega = "-1.5:1.5:0.5";
  int l_max = 3;
  std::vector<int> candidates = {1, 2, 3, 4};
  std::string output;  // empty: stdout
  std::string format = "csv";
  int quadrature_order = 24;
  double tolerance = 1e-10;

  // subcommand specific
  std::string input;
  std::string preset = "diagonal";
  std::string spacetime = "ads";
  std::string mode;
  double mass = 1.0;
  double radius = 5.0;
  double rho = 0.6;
  double pflat = 1.0;
  std::vector<double> point;
};

inline double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw config_error("not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw config_error("not a number: '" + s + "'");
  return v;
}

// "start:stop:step" (inclusive) or a comma list
inline std::vector<double> parse_omega_list(const std::string& spec) {
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw config_error("omega range must be start:stop:step");
    double a = parse_number(parts[0]), b = parse_number(parts[1]), h = parse_number(parts[2]);
    if (!(h > 0.0) || b < a) throw config_error("omega range needs step > 0 and stop >= start");
    auto n = static_cast<long>(std::floor((b - a) / h + 1e-9));
    if (n > 100000) throw config_error("omega range has too many points");
    for (long i = 0; i <= n; ++i) out.push_back(a + i * h);
  } else {
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(parse_number(p));
  }
  if (out.empty()) throw config_error("empty omega grid");
  return out;
}

// Mirrored, sorted, deduplicated; unit weights.
inline std::vector<freq_node> symmetric_grid(const std::vector<double>& omegas) {
  std::vector<double> all;
  for (double w : omegas) {
    double v = std::abs(w) < freq_tolerance ? 0.0 : w;
    all.push_back(v);
    all.push_back(-v);
  }
  std::sort(all.begin(), all.end());
  std::vector<freq_node> grid;
  for (double w : all)
    if (grid.empty() || w - grid.back().omega > freq_tolerance) grid.push_back({w, 1.0});
  return grid;
}

inline void validate(const sweep_config& c) {
  if (c.d < 3) throw config_error("d must be >= 3");
  if (!(c.R > 0.0)) throw config_error("radius must be positive");
  if (c.l_max < 0) throw config_error("lmax must be >= 0");
  if (c.format != "csv" && c.format != "json") throw config_error("format must be csv or json");
  if (c.quadrature_order < 4) throw config_error("quadrature order must be >= 4");
  if (!(c.tolerance > 0.0)) throw config_error("tolerance must be positive");
  for (int k : c.candidates)
    if (k < 1 || k > 4) throw config_error("candidates must be in 1..4");
  if (c.candidates.empty()) throw config_error("no candidates selected");
}

}  // namespace kgm::cli
