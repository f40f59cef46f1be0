#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kgmodes/ads_complex_structure.hpp"
#include "kgmodes/ads_modes.hpp"
#include "kgmodes/errors.hpp"

namespace kgm {

using json = nlohmann::json;

// 17 significant digits, round-trip exact
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline json complex_to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

inline std::complex<double> complex_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw config_error(std::string(what) + ": expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw config_error(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw config_error(std::string("field \"") + key + "\" has the wrong type");
  }
}

inline std::complex<double> complex_field(const json& j, const char* key) { return complex_from_json(field<json>(j, key), key); }

}  // namespace detail

// {"freq_grid": [{"omega", "weight"}], "entries": [{"omega", "levels", "m", "a", "b"}]}
inline json to_json(const mode_vector& v) {
  json grid = json::array(), entries = json::array();
  for (const auto& n : v.grid()) grid.push_back({{"omega", n.omega}, {"weight", n.weight}});
  for (const auto& [k, c] : v.entries())
    entries.push_back({{"omega", k.omega},
                       {"levels", k.L.levels},
                       {"m", k.L.m},
                       {"a", detail::complex_to_json(c.a)},
                       {"b", detail::complex_to_json(c.b)}});
  return {{"freq_grid", grid}, {"entries", entries}};
}

// d is inferred from the level count when entries exist, else taken from d_hint.
inline mode_vector mode_vector_from_json(const json& j, int d_hint = 3) {
  auto grid_j = detail::field<json>(j, "freq_grid");
  auto entries_j = detail::field<json>(j, "entries");
  if (!grid_j.is_array() || !entries_j.is_array()) throw config_error("freq_grid and entries must be arrays");
  std::vector<freq_node> grid;
  for (const auto& n : grid_j) grid.push_back({detail::field<double>(n, "omega"), detail::field<double>(n, "weight")});
  int d = d_hint;
  if (!entries_j.empty()) d = static_cast<int>(detail::field<std::vector<int>>(entries_j[0], "levels").size()) + 2;
  try {
    mode_vector v(d, grid);
    for (const auto& e : entries_j) {
      multi_index L{detail::field<std::vector<int>>(e, "levels"), detail::field<int>(e, "m")};
      v.set(detail::field<double>(e, "omega"), L, detail::complex_field(e, "a"), detail::complex_field(e, "b"));
    }
    return v;
  } catch (const domain_error& ex) {
    throw config_error(std::string("mode vector: ") + ex.what());
  }
}

// [{"omega", "l", "jaa", "jab", "jba", "jbb"}]
inline json to_json(const j_factors& jf) {
  json out = json::array();
  for (const auto& [k, e] : jf.entries())
    out.push_back({{"omega", k.first},
                   {"l", k.second},
                   {"jaa", detail::complex_to_json(e.jaa)},
                   {"jab", detail::complex_to_json(e.jab)},
                   {"jba", detail::complex_to_json(e.jba)},
                   {"jbb", detail::complex_to_json(e.jbb)}});
  return out;
}

inline j_factors j_factors_from_json(const json& j) {
  if (!j.is_array()) throw config_error("j-factor table must be a JSON array");
  j_factors jf;
  for (const auto& e : j) {
    int l = detail::field<int>(e, "l");
    if (l < 0) throw config_error("j-factor table: l < 0");
    jf.set(detail::field<double>(e, "omega"), l,
           {detail::complex_field(e, "jaa"), detail::complex_field(e, "jab"), detail::complex_field(e, "jba"),
            detail::complex_field(e, "jbb")});
  }
  return jf;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw config_error(path + ": " + e.what());
  }
}

}  // namespace kgm
