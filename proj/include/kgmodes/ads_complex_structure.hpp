#pragma once

#include <algorithm>
#include <climits>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "kgmodes/ads_modes.hpp"
#include "kgmodes/errors.hpp"
#include "kgmodes/specfun.hpp"

namespace kgm {

// J acts on (a, b) at fixed (ω, l) as [[jaa, jab], [jba, jbb]].
struct j_entry {
  std::complex<double> jaa{}, jab{}, jba{}, jbb{};
};

class j_factors {
 public:
  using key = std::pair<double, int>;

  void set(double omega, int l, const j_entry& e) {
    if (l < 0) throw domain_error("j_factors: l < 0");
    if (auto it = find(omega, l); it != entries_.end())
      it->second = e;
    else
      entries_[{omega, l}] = e;
  }

  bool contains(double omega, int l) const { return find(omega, l) != entries_.end(); }

  const j_entry& at(double omega, int l) const {
    auto it = find(omega, l);
    if (it == entries_.end())
      throw domain_error("no j-factor for omega = " + std::to_string(omega) + ", l = " + std::to_string(l));
    return it->second;
  }

  const std::map<key, j_entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::map<key, j_entry> entries_;

  template <class Self>
  static auto find_in(Self& m, double omega, int l) {
    double tol = freq_tolerance * std::max(1.0, std::abs(omega));
    for (auto it = m.lower_bound({omega - tol, INT_MIN}); it != m.end() && it->first.first <= omega + tol; ++it)
      if (it->first.second == l) return it;
    return m.end();
  }
  std::map<key, j_entry>::iterator find(double omega, int l) { return find_in(entries_, omega, l); }
  std::map<key, j_entry>::const_iterator find(double omega, int l) const { return find_in(entries_, omega, l); }
};

inline mode_vector apply_J(const j_factors& jf, const mode_vector& phi) {
  mode_vector out(phi.d(), phi.grid());
  for (const auto& [k, c] : phi.entries()) {
    const auto& e = jf.at(k.omega, k.L.l());
    out.set(k.omega, k.L, e.jaa * c.a + e.jab * c.b, e.jba * c.a + e.jbb * c.b);
  }
  return out;
}

// +i for ω > 0, -i for ω < 0
inline j_factors diagonal_jfactors(const std::vector<freq_node>& grid, int lmax) {
  if (lmax < 0) throw domain_error("diagonal_jfactors: lmax < 0");
  j_factors jf;
  for (const auto& n : grid) {
    if (std::abs(n.omega) <= freq_tolerance) throw domain_error("diagonal preset is undefined at omega = 0");
    std::complex<double> s(0.0, n.omega > 0 ? 1.0 : -1.0);
    for (int l = 0; l <= lmax; ++l) jf.set(n.omega, l, {s, 0.0, 0.0, s});
  }
  return jf;
}

// ---- conditions ----

enum class j_case { diagonal, nondiagonal, invalid };

inline const char* to_string(j_case c) {
  switch (c) {
    case j_case::diagonal: return "diagonal";
    case j_case::nondiagonal: return "nondiagonal";
    default: return "invalid";
  }
}

inline constexpr double condition_tolerance = 1e-10;

struct condition_report {
  bool reality_ok = true, square_ok = true, compat_ok = true, offdiag_ok = true, real_products_ok = true;
  bool positivity_ok = false;
  j_case kase = j_case::invalid;
  std::map<std::string, double> residuals;

  bool essential_ok() const { return reality_ok && square_ok && compat_ok && offdiag_ok && real_products_ok; }
  double residual(const std::string& name) const {
    auto it = residuals.find(name);
    if (it == residuals.end()) throw domain_error("no residual named " + name);
    return it->second;
  }
};

namespace detail {

inline double j_scale(const j_entry& e) {
  double m = std::max({std::abs(e.jaa), std::abs(e.jab), std::abs(e.jba), std::abs(e.jbb)});
  return std::max(1.0, m * m);
}

inline double reality_residual(const j_entry& e, const j_entry& mirror) {
  return std::max({std::abs(mirror.jaa - std::conj(e.jaa)), std::abs(mirror.jab - std::conj(e.jab)),
                   std::abs(mirror.jba - std::conj(e.jba)), std::abs(mirror.jbb - std::conj(e.jbb))});
}

}  // namespace detail

// Algebraic conditions at one (ω, l). Reality is only checked when the entry at (-ω, l) is supplied.
inline condition_report check_entry(const j_entry& e, const j_entry* mirror = nullptr) {
  const auto& [aa, ab, ba, bb] = e;
  double tol = condition_tolerance * detail::j_scale(e);
  condition_report r;
  auto& res = r.residuals;
  res["square_a"] = std::abs(aa * aa + ab * ba + 1.0);
  res["square_b"] = std::abs(bb * bb + ab * ba + 1.0);
  res["offdiag_ab"] = std::abs(ab * (aa + bb));
  res["offdiag_ba"] = std::abs(ba * (aa + bb));
  res["compat"] = std::abs(aa * std::conj(bb) - ba * std::conj(ab) - 1.0);
  res["real_aa_ba"] = std::abs(std::imag(aa * std::conj(ba)));
  res["real_bb_ab"] = std::abs(std::imag(bb * std::conj(ab)));
  res["real_ab_ba"] = std::abs(std::imag(ab * std::conj(ba)));
  r.square_ok = res["square_a"] <= tol && res["square_b"] <= tol;
  r.offdiag_ok = res["offdiag_ab"] <= tol && res["offdiag_ba"] <= tol;
  r.compat_ok = res["compat"] <= tol;
  r.real_products_ok = res["real_aa_ba"] <= tol && res["real_bb_ab"] <= tol && res["real_ab_ba"] <= tol;
  if (mirror) {
    res["reality"] = detail::reality_residual(e, *mirror);
    r.reality_ok = res["reality"] <= tol;
  }
  if (!r.essential_ok()) return r;

  double t = condition_tolerance * std::sqrt(detail::j_scale(e));
  bool off_zero = std::abs(ab) <= t && std::abs(ba) <= t;
  bool all_real = std::abs(aa.imag()) <= t && std::abs(ab.imag()) <= t && std::abs(ba.imag()) <= t && std::abs(bb.imag()) <= t;
  if (off_zero && std::abs(aa - bb) <= t && std::abs(std::abs(aa.imag()) - 1.0) <= t)
    r.kase = j_case::diagonal;
  else if (all_real && std::abs(aa + bb) <= t)
    r.kase = j_case::nondiagonal;
  r.positivity_ok = r.kase == j_case::nondiagonal && ba.real() > 0.0 && ab.real() < 0.0;
  return r;
}

struct audit_row {
  double omega;
  int l;
  condition_report report;
};

struct jfactor_report : condition_report {
  std::vector<audit_row> rows;
};

// Every stored (ω, l) is checked; residuals hold the worst value over the table.
inline jfactor_report check_conditions(const j_factors& jf) {
  if (jf.empty()) throw domain_error("check_conditions: empty j-factor table");
  jfactor_report out;
  bool all_diag = true, all_nondiag = true;
  out.positivity_ok = true;
  for (const auto& [k, e] : jf.entries()) {
    auto [omega, l] = k;
    const j_entry* mirror = jf.contains(-omega, l) ? &jf.at(-omega, l) : nullptr;
    auto r = check_entry(e, mirror);
    if (!mirror) {
      r.reality_ok = false;
      r.residuals["reality"] = std::numeric_limits<double>::infinity();
    }
    if (!r.essential_ok()) r.kase = j_case::invalid, r.positivity_ok = false;
    out.reality_ok &= r.reality_ok;
    out.square_ok &= r.square_ok;
    out.compat_ok &= r.compat_ok;
    out.offdiag_ok &= r.offdiag_ok;
    out.real_products_ok &= r.real_products_ok;
    out.positivity_ok &= r.positivity_ok;
    all_diag &= r.kase == j_case::diagonal;
    all_nondiag &= r.kase == j_case::nondiagonal;
    for (const auto& [name, v] : r.residuals) out.residuals[name] = std::max(out.residuals[name], v);
    out.rows.push_back({omega, l, std::move(r)});
  }
  out.kase = all_diag ? j_case::diagonal : all_nondiag ? j_case::nondiagonal : j_case::invalid;
  return out;
}

// Fill in the nondiagonal solution of the conditions from jab and jaa.
inline j_entry complete_nondiagonal(double jab, double jaa = 0.0) {
  if (jab == 0.0 || !std::isfinite(jab) || !std::isfinite(jaa)) throw domain_error("complete_nondiagonal: jab must be finite and nonzero");
  return {jaa, jab, -(1.0 + jaa * jaa) / jab, -jaa};
}

// g(φ, φ) for real φ:
// π R^{d-1} Σ_ω w Σ_L (2l+d-2) [jba |a|² - jab |b|² - 2 jaa Re(a b̄)]
inline double g_rho(const ads_params& p, const j_factors& jf, const mode_vector& phi) {
  if (phi.d() != p.d) throw domain_error("g_rho: dimension mismatch");
  double scale = 0.0;
  for (const auto& [k, c] : phi.entries()) scale = std::max({scale, std::abs(c.a), std::abs(c.b)});
  if (!is_real_solution(phi, 1e-12 * std::max(1.0, scale))) throw domain_error("g_rho needs a real solution");
  std::complex<double> s = 0.0;
  for (const auto& [k, c] : phi.entries()) {
    const auto& e = jf.at(k.omega, k.L.l());
    double w = phi.node(k.omega).weight * (2.0 * k.L.l() + p.d - 2);
    s += w * (e.jba * std::norm(c.a) - e.jab * std::norm(c.b) - 2.0 * e.jaa * std::real(c.a * std::conj(c.b)));
  }
  return std::numbers::pi * std::pow(p.R, p.d - 1) * s.real();
}

// ---- boosts ----

using jfactor_fn = std::function<std::complex<double>(double omega, int l)>;

struct boost_residual {
  double res_minus = 0.0, res_plus = 0.0;
};

namespace detail {

inline double boost_factor(const ads_params& p, double omega, int l, int sign) {
  double D = p.Delta, d = p.d;
  double den = (2.0 * l + d) * (2.0 * l + d - 2);
  if (sign < 0) return (D + omega - l - d) * (D - omega + l) / den;
  return (D - omega - l - d) * (D + omega + l) / den;
}

}  // namespace detail

// |jab(ω∓1, l+1) + F∓ jab(ω, l)|
inline boost_residual boost_recurrence_residual(const ads_params& p, const jfactor_fn& jab, double omega, int l) {
  if (l < 0) throw domain_error("boost_recurrence_residual: l < 0");
  auto j0 = jab(omega, l);
  return {std::abs(jab(omega - 1.0, l + 1) + detail::boost_factor(p, omega, l, -1) * j0),
          std::abs(jab(omega + 1.0, l + 1) + detail::boost_factor(p, omega, l, +1) * j0)};
}

// |F∓ jba(ω∓1, l+1) + jba(ω, l)|
inline boost_residual boost_recurrence_residual_ba(const ads_params& p, const jfactor_fn& jba, double omega, int l) {
  if (l < 0) throw domain_error("boost_recurrence_residual_ba: l < 0");
  auto j0 = jba(omega, l);
  return {std::abs(detail::boost_factor(p, omega, l, -1) * jba(omega - 1.0, l + 1) + j0),
          std::abs(detail::boost_factor(p, omega, l, +1) * jba(omega + 1.0, l + 1) + j0)};
}

// Closed-form jab(ω, l) candidates, which = 1..4. Poles throw pole_error.
inline std::complex<double> candidate_jab(int which, const ads_params& p, double omega, int l) {
  if (which < 1 || which > 4) throw config_error("candidate index must be 1..4");
  if (l < 0) throw domain_error("candidate_jab: l < 0");
  auto h = hypergeo_params(p, omega, l);
  std::vector<double> num, den = {h.gamma, h.gamma - 1.0};
  double sign = (which <= 2 && l % 2) ? -1.0 : 1.0;
  switch (which) {
    case 1:
      num = {h.alpha_a, h.beta_a};
      den.insert(den.end(), {h.alpha_b, h.beta_b});
      break;
    case 2:
      num = {1.0 - h.alpha_b, 1.0 - h.beta_b};
      den.insert(den.end(), {1.0 - h.alpha_a, 1.0 - h.beta_a});
      break;
    case 3:
      den.insert(den.end(), {h.alpha_b, h.beta_b, 1.0 - h.alpha_a, 1.0 - h.beta_a});
      break;
    default:
      num = {h.alpha_a, h.beta_a, 1.0 - h.alpha_b, 1.0 - h.beta_b};
  }
  double log_abs = 0.0;
  auto accumulate = [&](const std::vector<double>& xs, double s) {
    for (double x : xs) {
      auto g = log_gamma_signed(x);
      if (g.is_pole)
        throw pole_error("candidate " + std::to_string(which) + ": Gamma pole at argument " + std::to_string(x) +
                             " (omega = " + std::to_string(omega) + ", l = " + std::to_string(l) + ")",
                         x);
      log_abs += s * g.log_abs;
      sign *= g.sign;
    }
  };
  accumulate(num, 1.0);
  accumulate(den, -1.0);
  if (log_abs > 700.0) throw overflow_error("candidate value overflows");
  return sign * std::exp(log_abs);
}

// With jaa = i sign(ω), a boost step ω → ω-1 flips the sign of jaa whenever 0 < ω < 1.
inline bool diagonal_boost_mismatch(double omega) {
  if (omega == 0.0 || omega == 1.0) throw domain_error("diagonal preset is undefined at omega = 0");
  return (omega > 0.0) != (omega - 1.0 > 0.0);
}

}  // namespace kgm
