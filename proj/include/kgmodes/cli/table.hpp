#pragma once

#include <cmath>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "kgmodes/errors.hpp"
#include "kgmodes/io.hpp"

namespace kgm::cli {

using cell = std::variant<double, long long, bool, std::string>;

struct table {
  std::vector<std::string> columns;
  std::vector<std::vector<cell>> rows;

  void add(std::vector<cell> row) {
    if (row.size() != columns.size()) throw invariant_error("table row has the wrong width");
    rows.push_back(std::move(row));
  }
};

inline std::string cell_text(const cell& c) {
  if (auto d = std::get_if<double>(&c)) return format_double(*d);
  if (auto i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (auto b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return std::get<std::string>(c);
}

inline void write_csv(std::ostream& out, const table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << cell_text(r[i]);
    out << '\n';
  }
}

// Array of objects; non-finite numbers become null.
inline void write_json(std::ostream& out, const table& t) {
  json arr = json::array();
  for (const auto& r : t.rows) {
    json o = json::object();
    for (std::size_t i = 0; i < r.size(); ++i) {
      const auto& c = r[i];
      if (auto d = std::get_if<double>(&c))
        o[t.columns[i]] = std::isfinite(*d) ? json(*d) : json(nullptr);
      else if (auto n = std::get_if<long long>(&c))
        o[t.columns[i]] = *n;
      else if (auto b = std::get_if<bool>(&c))
        o[t.columns[i]] = *b;
      else
        o[t.columns[i]] = std::get<std::string>(c);
    }
    arr.push_back(std::move(o));
  }
  out << arr.dump(1) << '\n';
}

}  // namespace kgm::cli
