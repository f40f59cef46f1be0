#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kgmodes/errors.hpp"
#include "kgmodes/specfun.hpp"

namespace kgm {

// Quantum numbers of a harmonic on S^{d-1}. levels = (l_{d-1}, ..., l_2).
struct multi_index {
  std::vector<int> levels;
  int m = 0;

  int l() const { return levels.front(); }
  bool operator==(const multi_index&) const = default;
  auto operator<=>(const multi_index&) const = default;
};

// theta = (θ_{d-1}, ..., θ_2)
struct spherical_point {
  int d = 3;
  std::vector<double> theta;
  double phi = 0.0;
};

struct ladder {
  double chi_minus, chi_plus, delta_minus, delta_plus;
};

inline bool is_valid(int d, const multi_index& L) {
  if (d < 3 || static_cast<int>(L.levels.size()) != d - 2) return false;
  for (std::size_t i = 0; i < L.levels.size(); ++i) {
    if (L.levels[i] < 0) return false;
    if (i + 1 < L.levels.size() && L.levels[i + 1] > L.levels[i]) return false;
  }
  return std::abs(L.m) <= L.levels.back();
}

namespace detail {

inline void require_index(int d, const multi_index& L) {
  if (!is_valid(d, L)) throw domain_error("invalid multi-index for d = " + std::to_string(d));
}

inline void require_point(int d, const spherical_point& p) {
  if (p.d != d || static_cast<int>(p.theta.size()) != d - 2)
    throw domain_error("spherical point dimension mismatch");
}

// l_k and l_{k-1} of an index; level k = 2 pairs l_2 with |m|
inline int level_l(const multi_index& L, int d, int k) { return L.levels[d - 1 - k]; }
inline int level_sub(const multi_index& L, int d, int k) {
  return k == 2 ? std::abs(L.m) : L.levels[d - k];
}

// Relative constant of level k. For k = 2 it carries the φ normalisation as well.
inline double level_norm(int k, int l, int ls) {
  if (k == 2) {
    double r = (2.0 * l + 1.0) / (4.0 * std::numbers::pi);
    for (int j = l - ls + 1; j <= l + ls; ++j) r /= j;
    return std::sqrt(r);
  }
  double lam = ls + 0.5 * (k - 1);
  int n = l - ls;
  double lg = (lam - 0.5) * std::log(2.0) + std::lgamma(lam) +
              0.5 * (std::lgamma(n + 1.0) + std::log(n + lam) - std::log(std::numbers::pi) - std::lgamma(n + 2.0 * lam));
  return std::exp(lg);
}

// s^{ls} C^{ls+(k-1)/2}_{l-ls}(x) with x = cos θ, s = sin θ; Legendre P^{ls}_l at k = 2
inline double level_factor(int k, int l, int ls, double x, double s) {
  if (k == 2) return assoc_legendre(l, ls, x);
  return std::pow(s, ls) * gegenbauer(l - ls, ls + 0.5 * (k - 1), x);
}

// (1 - x^2) d/dx of level_factor
inline double level_factor_deriv(int k, int l, int ls, double x, double s) {
  double lam = ls + 0.5 * (k - 1);
  int n = l - ls;
  double c = gegenbauer(n, lam, x);
  double dc = gegenbauer_deriv(n, lam, x);
  double v = std::pow(s, ls) * (-ls * x * c + s * s * dc);
  if (k == 2) v *= double_factorial(2 * ls - 1);
  return v;
}

}  // namespace detail

inline double norm_const(int d, const multi_index& L) {
  detail::require_index(d, L);
  double n = 1.0;
  for (int k = 2; k <= d - 1; ++k) n *= detail::level_norm(k, detail::level_l(L, d, k), detail::level_sub(L, d, k));
  return n;
}

namespace detail {

// Everything except the top level factor.
inline std::complex<double> harmonic_rest(int d, const multi_index& L, const spherical_point& p) {
  double v = norm_const(d, L);
  for (int k = 2; k <= d - 2; ++k) {
    double t = p.theta[d - 1 - k];
    v *= level_factor(k, level_l(L, d, k), level_sub(L, d, k), std::cos(t), std::sin(t));
  }
  return v * std::polar(1.0, L.m * p.phi);
}

}  // namespace detail

inline std::complex<double> eval_harmonic(int d, const multi_index& L, const spherical_point& p) {
  detail::require_index(d, L);
  detail::require_point(d, p);
  double t = p.theta[0];
  return detail::harmonic_rest(d, L, p) *
         detail::level_factor(d - 1, L.l(), detail::level_sub(L, d, d - 1), std::cos(t), std::sin(t));
}

// (1 - x^2) ∂_x Y with x = cos θ_{d-1}
inline std::complex<double> harmonic_top_derivative(int d, const multi_index& L, const spherical_point& p) {
  detail::require_index(d, L);
  detail::require_point(d, p);
  double t = p.theta[0];
  return detail::harmonic_rest(d, L, p) *
         detail::level_factor_deriv(d - 1, L.l(), detail::level_sub(L, d, d - 1), std::cos(t), std::sin(t));
}

inline ladder ladder_coeffs(int d, int l, int l_sub) {
  if (d < 3 || l_sub < 0 || l < l_sub) throw domain_error("ladder_coeffs: need l >= l_sub >= 0, d >= 3");
  double cm = 0.0;
  if (l > l_sub)
    cm = std::sqrt((l - l_sub) * (l + l_sub + d - 3.0) / ((2.0 * l + d - 4) * (2.0 * l + d - 2)));
  double cp = std::sqrt((l - l_sub + 1.0) * (l + l_sub + d - 2.0) / ((2.0 * l + d - 2) * (2.0 * l + d)));
  return {cm, cp, (l + d - 2) * cm, -l * cp};
}

// All indices with top level l, ordered lexicographically in (levels, m).
inline std::vector<multi_index> harmonic_indices(int d, int l) {
  if (d < 3 || l < 0) throw domain_error("harmonic_indices: need d >= 3, l >= 0");
  std::vector<multi_index> out;
  multi_index cur{std::vector<int>(d - 2, 0), 0};
  cur.levels[0] = l;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == cur.levels.size()) {
      int top = cur.levels.back();
      for (int m = -top; m <= top; ++m) {
        cur.m = m;
        out.push_back(cur);
      }
      return;
    }
    for (int v = 0; v <= cur.levels[i - 1]; ++v) {
      cur.levels[i] = v;
      rec(i + 1);
    }
  };
  rec(1);
  return out;
}

inline std::vector<multi_index> harmonic_indices_upto(int d, int lmax) {
  std::vector<multi_index> out;
  for (int l = 0; l <= lmax; ++l) {
    auto b = harmonic_indices(d, l);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

// ---- quadrature ----

struct gauss_rule {
  std::vector<double> x, w;
};

// Gauss rule for the weight (1 - x^2)^{λ - 1/2} on [-1, 1] (Golub-Welsch).
inline gauss_rule gauss_gegenbauer(int n, double lambda) {
  if (n < 1 || !(lambda > 0.0)) throw domain_error("gauss_gegenbauer: need n >= 1, lambda > 0");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n), sub(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) sub(k - 1) = std::sqrt(k * (k + 2.0 * lambda - 1.0) / (4.0 * (k + lambda) * (k + lambda - 1.0)));
  double mu0 = std::sqrt(std::numbers::pi) * std::exp(std::lgamma(lambda + 0.5) - std::lgamma(lambda + 1.0));
  gauss_rule r;
  if (n == 1) {
    r.x = {0.0};
    r.w = {mu0};
    return r;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  for (int i = 0; i < n; ++i) {
    r.x.push_back(es.eigenvalues()(i));
    double v = es.eigenvectors()(0, i);
    r.w.push_back(mu0 * v * v);
  }
  return r;
}

// Tensor rule on S^{d-1}: Gauss in each cos θ_k with weight sin^{k-1} θ_k, trapezoid in φ.
struct sphere_rule {
  int d = 3;
  int order = 24;
  std::vector<gauss_rule> levels;  // levels[i] belongs to θ_{d-1-i}
  std::vector<double> phi;
  double phi_weight = 0.0;
};

inline sphere_rule make_sphere_rule(int d, int order) {
  if (d < 3) throw domain_error("make_sphere_rule: d >= 3");
  if (order < 4) throw domain_error("quadrature order must be >= 4");
  sphere_rule r{d, order, {}, {}, 0.0};
  for (int k = d - 1; k >= 2; --k) r.levels.push_back(gauss_gegenbauer(order, 0.5 * (k - 1)));
  int np = 2 * order;
  for (int j = 0; j < np; ++j) r.phi.push_back(2.0 * std::numbers::pi * j / np);
  r.phi_weight = 2.0 * std::numbers::pi / np;
  return r;
}

// Calls f(point, weight) at every node of the rule.
template <class F>
void for_each_node(const sphere_rule& r, F&& f) {
  int nl = r.d - 2;
  std::vector<int> idx(nl, 0);
  spherical_point p{r.d, std::vector<double>(nl), 0.0};
  while (true) {
    double w = r.phi_weight;
    for (int i = 0; i < nl; ++i) {
      p.theta[i] = std::acos(r.levels[i].x[idx[i]]);
      w *= r.levels[i].w[idx[i]];
    }
    for (double ph : r.phi) {
      p.phi = ph;
      f(static_cast<const spherical_point&>(p), w);
    }
    int i = nl - 1;
    while (i >= 0 && ++idx[i] == r.order) idx[i--] = 0;
    if (i < 0) break;
  }
}

using angular_fn = std::function<std::complex<double>(const spherical_point&)>;

// ∫ f conj(g) dΩ
inline std::complex<double> sphere_inner(int d, const angular_fn& f, const angular_fn& g, int order = 24) {
  auto r = make_sphere_rule(d, order);
  std::complex<double> s = 0.0;
  for_each_node(r, [&](const spherical_point& p, double w) { s += w * f(p) * std::conj(g(p)); });
  return s;
}

// G_ij = ∫ Y_i conj(Y_j) with the same tensor rule, evaluated level by level.
inline Eigen::MatrixXcd harmonic_gram(int d, const std::vector<multi_index>& idx, int order = 24) {
  auto r = make_sphere_rule(d, order);
  for (const auto& L : idx) detail::require_index(d, L);
  std::size_t n = idx.size();
  // factor tables: tab[a][level][node]
  std::vector<std::vector<std::vector<double>>> tab(n, std::vector<std::vector<double>>(d - 2));
  std::vector<double> nc(n);
  for (std::size_t a = 0; a < n; ++a) {
    nc[a] = norm_const(d, idx[a]);
    for (int i = 0; i < d - 2; ++i) {
      int k = d - 1 - i;
      int l = detail::level_l(idx[a], d, k), ls = detail::level_sub(idx[a], d, k);
      for (double x : r.levels[i].x) tab[a][i].push_back(detail::level_factor(k, l, ls, x, std::sqrt(1.0 - x * x)));
    }
  }
  Eigen::MatrixXcd g(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      double v = nc[a] * nc[b];
      for (int i = 0; i < d - 2 && v != 0.0; ++i) {
        double s = 0.0;
        for (int j = 0; j < order; ++j) s += r.levels[i].w[j] * tab[a][i][j] * tab[b][i][j];
        v *= s;
      }
      std::complex<double> ph = 0.0;
      for (double p : r.phi) ph += r.phi_weight * std::polar(1.0, (idx[a].m - idx[b].m) * p);
      g(a, b) = v * ph;
      g(b, a) = std::conj(g(a, b));
    }
  return g;
}

// ---- embedding and rotations ----

inline Eigen::VectorXd to_cartesian(const spherical_point& p) {
  int d = p.d;
  detail::require_point(d, p);
  Eigen::VectorXd x(d);
  double s = 1.0;
  // x_{k+1} = (Π_{j>k} sin θ_j) cos θ_k, stored 0-based
  for (int k = d - 1; k >= 2; --k) {
    double t = p.theta[d - 1 - k];
    x(k) = s * std::cos(t);
    s *= std::sin(t);
  }
  x(0) = s * std::cos(p.phi);
  x(1) = s * std::sin(p.phi);
  return x;
}

inline spherical_point from_cartesian(const Eigen::VectorXd& x) {
  int d = static_cast<int>(x.size());
  if (d < 3) throw domain_error("from_cartesian: d >= 3");
  spherical_point p{d, std::vector<double>(d - 2), 0.0};
  double r2 = x(0) * x(0) + x(1) * x(1);
  for (int k = 2; k <= d - 1; ++k) {
    p.theta[d - 1 - k] = std::atan2(std::sqrt(r2), x(k));
    r2 += x(k) * x(k);
  }
  double ph = std::atan2(x(1), x(0));
  p.phi = ph < 0 ? ph + 2.0 * std::numbers::pi : ph;
  return p;
}

inline spherical_point rotate_point(const Eigen::MatrixXd& R, const spherical_point& p) {
  if (R.rows() != p.d || R.cols() != p.d) throw domain_error("rotate_point: matrix size mismatch");
  return from_cartesian(R * to_cartesian(p));
}

// d^l_{m'm}(β), entry (m'+l, m+l)
inline Eigen::MatrixXd wigner_small_d(int l, double beta) {
  if (l < 0) throw domain_error("wigner_small_d: l < 0");
  int n = 2 * l + 1;
  Eigen::MatrixXd d(n, n);
  double c = std::cos(beta / 2), s = std::sin(beta / 2);
  for (int mp = -l; mp <= l; ++mp)
    for (int m = -l; m <= l; ++m) {
      double pre = 0.5 * (std::lgamma(l + mp + 1.0) + std::lgamma(l - mp + 1.0) + std::lgamma(l + m + 1.0) + std::lgamma(l - m + 1.0));
      double sum = 0.0;
      for (int k = std::max(0, m - mp); k <= std::min(l + m, l - mp); ++k) {
        double den = std::lgamma(l + m - k + 1.0) + std::lgamma(k + 1.0) + std::lgamma(mp - m + k + 1.0) + std::lgamma(l - mp - k + 1.0);
        double t = std::exp(pre - den) * std::pow(c, 2 * l + m - mp - 2 * k) * std::pow(s, mp - m + 2 * k);
        sum += ((mp - m + k) % 2) ? -t : t;
      }
      d(mp + l, m + l) = sum;
    }
  return d;
}

// e^{-im'α1} d^l_{m'm}(α2) e^{-imα3}
inline Eigen::MatrixXcd wigner_D(int l, double a1, double a2, double a3) {
  Eigen::MatrixXd d = wigner_small_d(l, a2);
  Eigen::MatrixXcd D(2 * l + 1, 2 * l + 1);
  for (int mp = -l; mp <= l; ++mp)
    for (int m = -l; m <= l; ++m) D(mp + l, m + l) = std::polar(1.0, -mp * a1 - m * a3) * d(mp + l, m + l);
  return D;
}

// Point map R matched to wigner_D(α1, α2, α3): (Rz(α1) Ry(α2) Rz(α3))^{-1}.
inline Eigen::Matrix3d euler_zyz_rotation(double a1, double a2, double a3) {
  using Eigen::AngleAxisd;
  using Eigen::Vector3d;
  Eigen::Matrix3d r = (AngleAxisd(a1, Vector3d::UnitZ()) * AngleAxisd(a2, Vector3d::UnitY()) * AngleAxisd(a3, Vector3d::UnitZ())).toRotationMatrix();
  return r.transpose();
}

// Rotation block of S^2 in the phase convention used here.
inline Eigen::MatrixXcd rotation_block_euler(int l, double a1, double a2, double a3) {
  Eigen::MatrixXcd D = wigner_D(l, a1, a2, a3);
  auto c = [](int m) { return (m > 0 && (m % 2)) ? -1.0 : 1.0; };
  for (int mp = -l; mp <= l; ++mp)
    for (int m = -l; m <= l; ++m) D(mp + l, m + l) *= c(mp) * c(m);
  return D;
}

// M_{L'L} = ∫ Y_L(RΩ) conj(Y_{L'}(Ω)) dΩ over the degree-l block.
inline Eigen::MatrixXcd rotation_block_quadrature(int d, int l, const Eigen::MatrixXd& R, int order = 24) {
  if (R.rows() != d || R.cols() != d) throw domain_error("rotation matrix size mismatch");
  auto idx = harmonic_indices(d, l);
  auto rule = make_sphere_rule(d, order);
  Eigen::Index n = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
  Eigen::VectorXcd a(n), b(n);
  for_each_node(rule, [&](const spherical_point& p, double w) {
    auto q = rotate_point(R, p);
    for (Eigen::Index i = 0; i < n; ++i) {
      a(i) = eval_harmonic(d, idx[i], q);
      b(i) = eval_harmonic(d, idx[i], p);
    }
    M.noalias() += w * b.conjugate() * a.transpose();
  });
  return M;
}

// c' = M c, so that Σ c'_L Y_L(Ω) = Σ c_L Y_L(RΩ)
inline Eigen::VectorXcd rotate_coeffs(int d, int l, const Eigen::MatrixXcd& D, const Eigen::VectorXcd& c) {
  auto n = static_cast<Eigen::Index>(harmonic_indices(d, l).size());
  if (D.rows() != n || D.cols() != n || c.size() != n) throw domain_error("rotate_coeffs: dimension mismatch");
  return D * c;
}

}  // namespace kgm
