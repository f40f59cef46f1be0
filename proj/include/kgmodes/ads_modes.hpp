#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "kgmodes/errors.hpp"
#include "kgmodes/harmonics.hpp"
#include "kgmodes/specfun.hpp"

namespace kgm {

struct ads_params {
  int d = 3;          // spatial dimension
  double Delta = 0;   // mass parameter
  double R = 1.0;     // curvature radius
};

inline ads_params make_ads_params(int d, double Delta, double R) {
  if (d < 3) throw config_error("d must be >= 3");
  if (!(R > 0.0)) throw config_error("AdS radius must be positive");
  if (!(Delta > 0.5 * (d - 1))) throw config_error("Delta must exceed (d-1)/2");
  return {d, Delta, R};
}

// d/2 + sqrt(d^2/4 + m^2 R^2)
inline double delta_from_mass(double mass, double R, int d) {
  return 0.5 * d + std::sqrt(0.25 * d * d + mass * mass * R * R);
}

struct hypergeo {
  double alpha_a, beta_a, alpha_b, beta_b, gamma;
};

inline hypergeo hypergeo_params(const ads_params& p, double omega, int l) {
  if (l < 0) throw domain_error("hypergeo_params: l < 0");
  double D = p.Delta;
  return {0.5 * (D - omega + l), 0.5 * (D + omega + l), 0.5 * (D - omega - l - p.d + 2), 0.5 * (D + omega - l - p.d + 2),
          l + 0.5 * p.d};
}

enum class channel { a, b };

namespace detail {

inline void check_rho(double rho) {
  if (!(rho > 0.0) || !(rho < 0.5 * std::numbers::pi)) throw domain_error("rho outside (0, pi/2)");
  double z = std::sin(rho) * std::sin(rho);
  if (z > hyp2f1_zmax) throw domain_error("sin^2 rho exceeds the series limit 0.95");
}

struct radial_parts {
  double e;  // power of sin ρ
  double a, b, c;
};

inline radial_parts radial_setup(const ads_params& p, double omega, int l, channel ch) {
  auto h = hypergeo_params(p, omega, l);
  if (ch == channel::a) return {double(l), h.alpha_a, h.beta_a, h.gamma};
  return {double(2 - p.d - l), h.alpha_b, h.beta_b, 2.0 - h.gamma};
}

}  // namespace detail

// Channel a: sin^l ρ cos^Δ ρ F(α_a, β_a; γ; sin²ρ); channel b: sin^{2-d-l} ρ cos^Δ ρ F(α_b, β_b; 2-γ; sin²ρ).
inline double radial_eval(const ads_params& p, double omega, int l, channel ch, double rho) {
  detail::check_rho(rho);
  auto q = detail::radial_setup(p, omega, l, ch);
  double s = std::sin(rho), c = std::cos(rho);
  return std::pow(s, q.e) * std::pow(c, p.Delta) * hyp2f1(q.a, q.b, q.c, s * s);
}

inline double radial_deriv(const ads_params& p, double omega, int l, channel ch, double rho) {
  detail::check_rho(rho);
  auto q = detail::radial_setup(p, omega, l, ch);
  double s = std::sin(rho), c = std::cos(rho);
  double pre = std::pow(s, q.e) * std::pow(c, p.Delta);
  double F = hyp2f1(q.a, q.b, q.c, s * s), dF = hyp2f1_deriv(q.a, q.b, q.c, s * s);
  return pre * (F * (q.e * c / s - p.Delta * s / c) + dF * 2.0 * s * c);
}

// tan^{d-1}ρ (S^a S^b' - S^b S^a'); equals -(2l+d-2) for unit leading coefficients
inline double radial_wronskian(const ads_params& p, double omega, int l, double rho) {
  double sa = radial_eval(p, omega, l, channel::a, rho), sb = radial_eval(p, omega, l, channel::b, rho);
  double da = radial_deriv(p, omega, l, channel::a, rho), db = radial_deriv(p, omega, l, channel::b, rho);
  return std::pow(std::tan(rho), p.d - 1) * (sa * db - sb * da);
}

// ---- mode space ----

struct freq_node {
  double omega, weight;
};

struct mode_key {
  double omega;
  multi_index L;
  auto operator<=>(const mode_key&) const = default;
  bool operator==(const mode_key&) const = default;
};

struct mode_coeffs {
  std::complex<double> a{}, b{};
};

inline constexpr double freq_tolerance = 1e-10;

// Coefficients (a, b) over a symmetric frequency grid and harmonic indices.
class mode_vector {
 public:
  mode_vector(int d, std::vector<freq_node> grid) : d_(d), grid_(std::move(grid)) {
    if (d_ < 3) throw domain_error("mode_vector: d >= 3");
    if (grid_.empty()) throw domain_error("mode_vector: empty frequency grid");
    std::sort(grid_.begin(), grid_.end(), [](const freq_node& x, const freq_node& y) { return x.omega < y.omega; });
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      if (!(grid_[i].weight > 0.0)) throw domain_error("mode_vector: weights must be positive");
      if (i > 0 && grid_[i].omega - grid_[i - 1].omega <= freq_tolerance) throw domain_error("mode_vector: duplicate frequency");
      const auto& mirror = grid_[grid_.size() - 1 - i];
      if (std::abs(mirror.omega + grid_[i].omega) > freq_tolerance ||
          std::abs(mirror.weight - grid_[i].weight) > 1e-12 * grid_[i].weight)
        throw domain_error("mode_vector: frequency grid must be symmetric with w(-omega) = w(omega)");
    }
  }

  int d() const { return d_; }
  const std::vector<freq_node>& grid() const { return grid_; }
  const std::map<mode_key, mode_coeffs>& entries() const { return entries_; }

  const freq_node& node(double omega) const {
    for (const auto& n : grid_)
      if (std::abs(n.omega - omega) <= freq_tolerance * std::max(1.0, std::abs(omega))) return n;
    throw domain_error("frequency not on the grid: " + std::to_string(omega));
  }

  void set(double omega, const multi_index& L, std::complex<double> a, std::complex<double> b) {
    if (!is_valid(d_, L)) throw domain_error("mode_vector: invalid multi-index");
    entries_[{node(omega).omega, L}] = {a, b};
  }

  mode_coeffs get(double omega, const multi_index& L) const {
    auto it = entries_.find({node(omega).omega, L});
    return it == entries_.end() ? mode_coeffs{} : it->second;
  }

  bool same_grid(const mode_vector& o) const {
    if (d_ != o.d_ || grid_.size() != o.grid_.size()) return false;
    for (std::size_t i = 0; i < grid_.size(); ++i)
      if (grid_[i].omega != o.grid_[i].omega || grid_[i].weight != o.grid_[i].weight) return false;
    return true;
  }

 private:
  int d_;
  std::vector<freq_node> grid_;
  std::map<mode_key, mode_coeffs> entries_;
};

inline multi_index flip_m(multi_index L) {
  L.m = -L.m;
  return L;
}

inline mode_vector linear_combination(std::complex<double> s, const mode_vector& x, std::complex<double> t, const mode_vector& y) {
  if (!x.same_grid(y)) throw domain_error("linear_combination: grid mismatch");
  mode_vector r(x.d(), x.grid());
  for (const auto& [k, c] : x.entries()) r.set(k.omega, k.L, s * c.a, s * c.b);
  for (const auto& [k, c] : y.entries()) {
    auto old = r.get(k.omega, k.L);
    r.set(k.omega, k.L, old.a + t * c.a, old.b + t * c.b);
  }
  return r;
}

// Largest coefficient difference.
inline double distance(const mode_vector& x, const mode_vector& y) {
  double m = 0.0;
  for (const auto& [k, c] : x.entries()) {
    auto o = y.get(k.omega, k.L);
    m = std::max({m, std::abs(c.a - o.a), std::abs(c.b - o.b)});
  }
  for (const auto& [k, c] : y.entries()) {
    auto o = x.get(k.omega, k.L);
    m = std::max({m, std::abs(c.a - o.a), std::abs(c.b - o.b)});
  }
  return m;
}

// π R^{d-1} Σ_ω w Σ_L (2l+d-2) [η^a(ω,L) ζ^b(-ω,L̄) - η^b(ω,L) ζ^a(-ω,L̄)], L̄ = L with -m
inline std::complex<double> omega_rho(const ads_params& p, const mode_vector& eta, const mode_vector& zeta) {
  if (!eta.same_grid(zeta) || eta.d() != p.d) throw domain_error("omega_rho: grid or dimension mismatch");
  std::complex<double> s = 0.0;
  for (const auto& [k, c] : eta.entries()) {
    auto z = zeta.get(-k.omega, flip_m(k.L));
    double w = eta.node(k.omega).weight * (2.0 * k.L.l() + p.d - 2);
    s += w * (c.a * z.b - c.b * z.a);
  }
  return std::numbers::pi * std::pow(p.R, p.d - 1) * s;
}

// a(-ω, L̄) = conj a(ω, L) and likewise for b
inline bool is_real_solution(const mode_vector& phi, double tol = 1e-12) {
  for (const auto& [k, c] : phi.entries()) {
    auto m = phi.get(-k.omega, flip_m(k.L));
    if (std::abs(m.a - std::conj(c.a)) > tol || std::abs(m.b - std::conj(c.b)) > tol) return false;
  }
  return true;
}

struct time_translation {
  double dt = 0.0;
};

// Per-l blocks ordered as harmonic_indices(d, l); c' = M c.
struct rotation {
  std::map<int, Eigen::MatrixXcd> blocks;
};

using isometry = std::variant<time_translation, rotation>;

inline mode_vector act_isometry(const ads_params& p, const isometry& g, const mode_vector& phi) {
  if (phi.d() != p.d) throw domain_error("act_isometry: dimension mismatch");
  mode_vector out(phi.d(), phi.grid());
  if (auto t = std::get_if<time_translation>(&g)) {
    for (const auto& [k, c] : phi.entries()) {
      auto ph = std::polar(1.0, k.omega * t->dt);
      out.set(k.omega, k.L, ph * c.a, ph * c.b);
    }
    return out;
  }
  const auto& rot = std::get<rotation>(g);
  std::map<std::pair<double, int>, bool> seen;
  for (const auto& [k, c] : phi.entries()) seen[{k.omega, k.L.l()}] = true;
  for (const auto& [key, unused] : seen) {
    auto [om, l] = key;
    auto it = rot.blocks.find(l);
    if (it == rot.blocks.end()) throw domain_error("act_isometry: missing rotation block for l = " + std::to_string(l));
    auto idx = harmonic_indices(p.d, l);
    auto n = static_cast<Eigen::Index>(idx.size());
    if (it->second.rows() != n || it->second.cols() != n) throw domain_error("act_isometry: rotation block has wrong size");
    Eigen::VectorXcd a(n), b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      auto c = phi.get(om, idx[i]);
      a(i) = c.a;
      b(i) = c.b;
    }
    Eigen::VectorXcd ra = it->second * a, rb = it->second * b;
    for (Eigen::Index i = 0; i < n; ++i) out.set(om, idx[i], ra(i), rb(i));
  }
  return out;
}

}  // namespace kgm
