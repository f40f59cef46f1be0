#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kgmodes/ads_modes.hpp"
#include "kgmodes/errors.hpp"
#include "kgmodes/specfun.hpp"

namespace kgm {

struct diagonal_metric_point {
  std::vector<double> g_diag;
  // christoffel[α](μ, ν) = Γ^α_{μν}; empty means all zero
  std::vector<Eigen::MatrixXd> christoffel;
};

// φ, ∂_μ φ and ∂_μ ∂_ν φ at a point
struct field_jet {
  double phi = 0.0;
  std::vector<double> d1;
  Eigen::MatrixXd d2;
};

// T = T_min + b T_imp with the field equation used to eliminate □φ²:
// (1-b) ∂φ∂φ + (b-½) g (∂φ)² + (½-b) g m²φ² - b φ ∇_μ∇_ν φ + (b/2) R_{μν} φ²,
// ∇_μ∇_ν φ = ∂_μ∂_ν φ - Γ^α_{μν} ∂_α φ.
inline Eigen::MatrixXd em_tensor(double b, const field_jet& jet, double m, const diagonal_metric_point& g,
                                 const Eigen::MatrixXd& ricci) {
  const auto n = static_cast<Eigen::Index>(g.g_diag.size());
  if (n == 0 || static_cast<Eigen::Index>(jet.d1.size()) != n || jet.d2.rows() != n || jet.d2.cols() != n ||
      ricci.rows() != n || ricci.cols() != n)
    throw domain_error("em_tensor: dimension mismatch");
  if (!g.christoffel.empty() && static_cast<Eigen::Index>(g.christoffel.size()) != n)
    throw domain_error("em_tensor: need one Christoffel matrix per index");
  for (double x : g.g_diag)
    if (x == 0.0) throw domain_error("em_tensor: degenerate metric");

  Eigen::Map<const Eigen::VectorXd> dphi(jet.d1.data(), n);
  double kin = 0.0;
  for (Eigen::Index a = 0; a < n; ++a) kin += dphi(a) * dphi(a) / g.g_diag[a];
  Eigen::MatrixXd hess = jet.d2;
  for (Eigen::Index a = 0; a < static_cast<Eigen::Index>(g.christoffel.size()); ++a) hess -= g.christoffel[a] * dphi(a);

  Eigen::MatrixXd T = (1.0 - b) * dphi * dphi.transpose() - b * jet.phi * hess + 0.5 * b * jet.phi * jet.phi * ricci;
  double diag = (b - 0.5) * kin + (0.5 - b) * m * m * jet.phi * jet.phi;
  for (Eigen::Index a = 0; a < n; ++a) T(a, a) += g.g_diag[a] * diag;
  return T;
}

// -T_{tρ} √|g^{tt} g^{ρρ}|
inline double radial_momentum_density(const Eigen::MatrixXd& T, const diagonal_metric_point& g, int t_index = 0,
                                      int r_index = 1) {
  int n = static_cast<int>(g.g_diag.size());
  if (T.rows() != n || T.cols() != n || t_index < 0 || r_index < 0 || t_index >= n || r_index >= n || t_index == r_index)
    throw domain_error("radial_momentum_density: bad indices or size");
  return -T(t_index, r_index) * std::sqrt(std::abs(1.0 / (g.g_diag[t_index] * g.g_diag[r_index])));
}

// ---- flux through a hypercylinder ----

enum class direction { outgoing, incoming, standing };
enum class spacetime { minkowski, ads };

inline const char* to_string(direction v) {
  switch (v) {
    case direction::outgoing: return "outgoing";
    case direction::incoming: return "incoming";
    default: return "standing";
  }
}

struct direction_verdict {
  direction verdict = direction::standing;
  double flux_per_time = 0.0;
};

inline constexpr double flux_tolerance = 1e-12;

// Radial momentum per unit time of e^{-iωt} Y f + c.c.:
// Minkowski -iω r^{d-1} (f̄f' - f f̄'), AdS -2iω R^{d-1} tan^{d-1}ρ (f̄f' - f f̄').
inline direction_verdict mode_flux(spacetime st, const ads_params& p, double omega, double radius, std::complex<double> f,
                                   std::complex<double> fp) {
  if (!(radius > 0.0)) throw domain_error("mode_flux: radius must be positive");
  if (st == spacetime::ads && !(radius < 0.5 * std::numbers::pi)) throw domain_error("mode_flux: rho outside (0, pi/2)");
  double pre = st == spacetime::minkowski ? omega * std::pow(radius, p.d - 1)
                                          : 2.0 * omega * std::pow(p.R, p.d - 1) * std::pow(std::tan(radius), p.d - 1);
  // -i pre (f̄f' - f f̄') = 2 pre Im(f̄ f')
  double flux = 2.0 * pre * std::imag(std::conj(f) * fp);
  if (std::abs(flux) <= flux_tolerance * std::abs(pre) * std::abs(f) * std::abs(fp)) return {direction::standing, 0.0};
  return {flux > 0 ? direction::outgoing : direction::incoming, flux};
}

// e^{-iωt} Y h_l(pr) in three spatial dimensions, p = √(ω² - m²)
inline direction_verdict minkowski_hankel_flux(double omega, double mass, int l, double r, radial_kind kind = radial_kind::h1) {
  if (!(omega * omega > mass * mass)) throw domain_error("minkowski_hankel_flux: |omega| must exceed the mass");
  if (kind != radial_kind::h1 && kind != radial_kind::h2) throw domain_error("minkowski_hankel_flux: kind must be h1 or h2");
  double p = std::sqrt(omega * omega - mass * mass);
  ads_params flat{3, 0.0, 1.0};
  return mode_flux(spacetime::minkowski, flat, omega, r, radial_basis(kind, l, p * r), p * radial_basis_deriv(kind, l, p * r));
}

// f = f^a S^a - i f^b S^b with f^a = p^l/(2l+d-2)!!, f^b = (2l+d-4)!!/p^{l+1}.
// The b channel enters with the sign of the Neumann branch, which is negative near the origin.
inline std::pair<std::complex<double>, std::complex<double>> ads_combined_radial(const ads_params& p, double omega, int l,
                                                                                double rho, double pflat) {
  if (!(pflat > 0.0)) throw domain_error("ads_combined_radial: flat-limit momentum must be positive");
  double fa = std::pow(pflat, l) / double_factorial(2 * l + p.d - 2);
  double fb = double_factorial(2 * l + p.d - 4) / std::pow(pflat, l + 1);
  std::complex<double> f(fa * radial_eval(p, omega, l, channel::a, rho), -fb * radial_eval(p, omega, l, channel::b, rho));
  std::complex<double> fp(fa * radial_deriv(p, omega, l, channel::a, rho), -fb * radial_deriv(p, omega, l, channel::b, rho));
  return {f, fp};
}

// ---- extrema method ----

enum class relation { future, past, ambiguous };
enum class family_axis { time, radial };

inline const char* to_string(relation r, family_axis axis = family_axis::time) {
  if (r == relation::ambiguous) return "ambiguous";
  if (axis == family_axis::radial) return r == relation::future ? "outwards" : "inwards";
  return r == relation::future ? "future" : "past";
}

namespace detail {

struct family_max {
  double x;
  int index;  // grid index of the sampled maximum
  int member;
};

// interior grid maxima refined by a parabola through the three neighbouring samples
inline void collect_maxima(const std::vector<double>& x, const std::vector<double>& f, int member, std::vector<family_max>& out) {
  for (std::size_t i = 1; i + 1 < f.size(); ++i) {
    if (!(f[i] > f[i - 1] && f[i] >= f[i + 1])) continue;
    double den = f[i - 1] - 2.0 * f[i] + f[i + 1];
    double shift = den != 0.0 ? 0.5 * (f[i - 1] - f[i + 1]) / den : 0.0;
    double h = shift >= 0 ? x[i + 1] - x[i] : x[i] - x[i - 1];
    out.push_back({x[i] + shift * h, static_cast<int>(i), member});
  }
}

}  // namespace detail

// Compares maxima of first, second, -first, -second. "future": every maximum of first is followed directly
// by a maximum of second; "past": preceded directly. Coarse sampling or broken interlacing gives ambiguous.
inline relation extrema_relation(const std::vector<double>& x, const std::vector<double>& first, const std::vector<double>& second) {
  if (x.size() != first.size() || x.size() != second.size()) throw domain_error("extrema_relation: sample size mismatch");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1])) throw domain_error("extrema_relation: grid must be increasing");
  std::vector<double> mf(first.size()), ms(second.size());
  std::transform(first.begin(), first.end(), mf.begin(), [](double v) { return -v; });
  std::transform(second.begin(), second.end(), ms.begin(), [](double v) { return -v; });
  std::vector<detail::family_max> all;
  detail::collect_maxima(x, first, 0, all);
  detail::collect_maxima(x, second, 1, all);
  detail::collect_maxima(x, mf, 2, all);
  detail::collect_maxima(x, ms, 3, all);
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
  if (all.size() < 5) return relation::ambiguous;
  for (std::size_t i = 1; i < all.size(); ++i)
    if (all[i].index - all[i - 1].index < 5) return relation::ambiguous;
  for (std::size_t i = 0; i + 4 < all.size(); ++i) {
    if (all[i + 4].member != all[i].member) return relation::ambiguous;
    for (std::size_t a = i; a < i + 4; ++a)
      for (std::size_t b = a + 1; b < i + 4; ++b)
        if (all[a].member == all[b].member) return relation::ambiguous;
  }
  bool future = true, past = true, seen = false;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i].member != 0) continue;
    if (i + 1 < all.size()) future &= all[i + 1].member == 1, seen = true;
    if (i > 0) past &= all[i - 1].member == 1, seen = true;
  }
  if (!seen || future == past) return relation::ambiguous;
  return future ? relation::future : relation::past;
}

}  // namespace kgm
