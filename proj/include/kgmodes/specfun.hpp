#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "kgmodes/errors.hpp"

namespace kgm {

inline constexpr double pole_tolerance = 1e-9;

struct signed_log_gamma {
  double log_abs = 0.0;
  int sign = 1;
  bool is_pole = false;

  double value() const {
    if (is_pole) throw pole_error("Gamma evaluated at a pole", std::nan(""));
    return sign * std::exp(log_abs);
  }
};

namespace detail {

inline bool near_nonpositive_integer(double x, double tol = pole_tolerance) {
  double n = std::round(x);
  return n <= 0.0 && std::abs(x - n) < tol;
}

// sin(pi x) with exact argument reduction
inline double sin_pi(double x) {
  double n = std::round(x);
  double f = x - n;
  double s = std::sin(std::numbers::pi * f);
  return (static_cast<long long>(n) % 2 == 0) ? s : -s;
}

// Lanczos g = 7, n = 9; valid for x >= 0.5
inline double lanczos_log_gamma(double x) {
  static constexpr std::array<double, 9> p = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  x -= 1.0;
  double a = p[0];
  const double t = x + 7.5;
  for (int i = 1; i < 9; ++i) a += p[i] / (x + i);
  return 0.5 * std::log(2.0 * std::numbers::pi) + (x + 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace detail

inline signed_log_gamma log_gamma_signed(double x) {
  signed_log_gamma r;
  if (!std::isfinite(x)) throw domain_error("log_gamma_signed: non-finite argument");
  if (detail::near_nonpositive_integer(x)) {
    r.is_pole = true;
    r.log_abs = std::nan("");
    r.sign = 0;
    return r;
  }
  if (x >= 0.5) {
    r.log_abs = detail::lanczos_log_gamma(x);
    r.sign = 1;
    return r;
  }
  // reflection: Γ(x) Γ(1-x) = π / sin(πx)
  double s = detail::sin_pi(x);
  r.log_abs = std::log(std::numbers::pi) - std::log(std::abs(s)) - detail::lanczos_log_gamma(1.0 - x);
  r.sign = s > 0 ? 1 : -1;
  return r;
}

inline double gamma_fn(double x) {
  auto g = log_gamma_signed(x);
  if (g.is_pole) throw pole_error("Gamma pole at x = " + std::to_string(x), x);
  double v = g.sign * std::exp(g.log_abs);
  if (!std::isfinite(v)) throw overflow_error("Gamma overflow at x = " + std::to_string(x));
  return v;
}

inline double double_factorial(int n) {
  if (n < -1) throw domain_error("double_factorial: n < -1");
  double r = 1.0;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

inline double factorial(int n) {
  if (n < 0) throw domain_error("factorial: n < 0");
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

// a_k(l + 1/2) = (l+k)! / (2^k k! (l-k)!)
inline double a_coeff(int k, int l) {
  if (l < 0) throw domain_error("a_coeff: l < 0");
  if (k < 0 || k > l) return 0.0;
  double r = 1.0;
  // (l+k)!/(l-k)! = prod_{j=l-k+1}^{l+k} j
  for (int j = l - k + 1; j <= l + k; ++j) r *= j;
  for (int j = 1; j <= k; ++j) r /= 2.0 * j;
  return r;
}

// Associated Legendre function without the Condon-Shortley phase.
// Negative orders follow the Rodrigues continuation,
// P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m.
inline double assoc_legendre(int l, int m, double x) {
  if (l < 0 || std::abs(m) > l) throw domain_error("assoc_legendre: need |m| <= l");
  if (x < -1.0 || x > 1.0) throw domain_error("assoc_legendre: x outside [-1,1]");
  if (m < 0) {
    int am = -m;
    double f = 1.0;
    for (int j = l - am + 1; j <= l + am; ++j) f /= j;
    return ((am % 2) ? -f : f) * assoc_legendre(l, am, x);
  }
  double pmm = 1.0;
  if (m > 0) {
    double s = std::sqrt((1.0 - x) * (1.0 + x));
    double fact = 1.0;
    for (int i = 1; i <= m; ++i) {
      pmm *= fact * s;
      fact += 2.0;
    }
  }
  if (l == m) return pmm;
  double pm1 = x * (2 * m + 1) * pmm;
  if (l == m + 1) return pm1;
  double pll = 0.0;
  for (int ll = m + 2; ll <= l; ++ll) {
    pll = ((2 * ll - 1) * x * pm1 - (ll + m - 1) * pmm) / (ll - m);
    pmm = pm1;
    pm1 = pll;
  }
  return pll;
}

inline double gegenbauer(int n, double alpha, double x) {
  if (n < 0) throw domain_error("gegenbauer: n < 0");
  if (!(alpha > -0.5)) throw domain_error("gegenbauer: alpha <= -1/2");
  if (n == 0) return 1.0;
  double c0 = 1.0, c1 = 2.0 * alpha * x;
  for (int k = 2; k <= n; ++k) {
    double c2 = (2.0 * x * (k + alpha - 1.0) * c1 - (k + 2.0 * alpha - 2.0) * c0) / k;
    c0 = c1;
    c1 = c2;
  }
  return c1;
}

inline double gegenbauer_deriv(int n, double alpha, double x) {
  if (n == 0) return 0.0;
  return 2.0 * alpha * gegenbauer(n - 1, alpha + 1.0, x);
}

enum class poly_family { assoc_legendre, gegenbauer };

inline double ortho_poly(poly_family fam, double p1, int p2, double x) {
  if (fam == poly_family::assoc_legendre) {
    if (p1 != std::round(p1)) throw domain_error("ortho_poly: Legendre order must be an integer");
    return assoc_legendre(p2, static_cast<int>(p1), x);
  }
  if (x < -1.0 || x > 1.0) throw domain_error("ortho_poly: x outside [-1,1]");
  return gegenbauer(p2, p1, x);
}

inline constexpr double hyp2f1_zmax = 0.95;

inline double hyp2f1(double a, double b, double c, double z) {
  if (!(z >= 0.0 && z <= hyp2f1_zmax)) throw domain_error("hyp2f1: z outside [0, 0.95]");
  if (detail::near_nonpositive_integer(c)) throw pole_error("hyp2f1: c at a pole", c);
  double sum = 1.0, term = 1.0;
  const double tail_factor = 1.0 / (1.0 - z);
  for (int k = 0; k < 10000; ++k) {
    double ratio = (a + k) * (b + k) / ((c + k) * (k + 1.0));
    term *= ratio * z;
    sum += term;
    if (term == 0.0) return sum;
    if (std::abs(ratio * z) < 1.0 && std::abs(term) * tail_factor <= 1e-17 * std::abs(sum)) return sum;
  }
  throw convergence_error("hyp2f1: series did not converge within 10000 terms");
}

inline double hyp2f1_deriv(double a, double b, double c, double z) {
  return a * b / c * hyp2f1(a + 1, b + 1, c + 1, z);
}

enum class radial_kind { j, n, h1, h2, j_evan, n_evan };

inline constexpr int radial_lmax = 30;
inline constexpr double radial_xmax = 50.0;

namespace detail {

inline void check_radial_args(int l, double x) {
  if (l < 0 || l > radial_lmax) throw domain_error("radial_basis: l outside [0,30]");
  if (!(x > 0.0) || x > radial_xmax) throw domain_error("radial_basis: x outside (0,50]");
}

inline double j_series(int l, double x) {
  double t = std::pow(x, l) / double_factorial(2 * l + 1);
  double s = t;
  const double q = -0.5 * x * x;
  for (int k = 1; k < 500; ++k) {
    t *= q / (k * (2.0 * l + 2.0 * k + 1.0));
    s += t;
    if (k > x && std::abs(t) <= 1e-17 * std::abs(s)) break;
  }
  return s;
}

inline double n_series(int l, double x) {
  double pre = -double_factorial(2 * l - 1) / std::pow(x, l + 1);
  if (!std::isfinite(pre)) throw overflow_error("radial_basis: n_l overflows for tiny x at this l");
  double t = 1.0, s = 1.0;
  const double q = -0.5 * x * x;
  for (int k = 1; k < 500; ++k) {
    t *= q / (k * (2.0 * k - 2.0 * l - 1.0));
    s += t;
    if (k > l + 1 && k > x && std::abs(t) <= 1e-17 * std::abs(s)) break;
  }
  return pre * s;
}

// sin and cos of x - πl/2 without rounding the shift
inline void shifted_trig(int l, double x, double& s, double& c) {
  double sx = std::sin(x), cx = std::cos(x);
  switch (l % 4) {
    case 0: s = sx; c = cx; break;
    case 1: s = -cx; c = sx; break;
    case 2: s = -sx; c = -cx; break;
    default: s = cx; c = -sx; break;
  }
}

}  // namespace detail

// Odd and even parts of the Hankel prefactor sums.
inline double sph_odd_sum(int l, double z) {
  double s = 0.0;
  for (int k = 0; 2 * k <= l; ++k) s += ((k % 2) ? -1.0 : 1.0) * a_coeff(2 * k, l) / std::pow(z, 2 * k + 1);
  return s;
}

inline double sph_even_sum(int l, double z) {
  double s = 0.0;
  for (int k = 0; 2 * k + 1 <= l; ++k) s += ((k % 2) ? -1.0 : 1.0) * a_coeff(2 * k + 1, l) / std::pow(z, 2 * k + 2);
  return s;
}

// S^±_l(z) = Σ_k (±i)^{k-l-1} a_k / z^{k+1}
inline std::complex<double> hankel_sum(int l, double z, int sign) {
  using cd = std::complex<double>;
  const cd unit(0.0, sign >= 0 ? 1.0 : -1.0);
  cd s = 0.0;
  for (int k = 0; k <= l; ++k) s += std::pow(unit, k - l - 1) * a_coeff(k, l) / std::pow(z, k + 1);
  return s;
}

inline std::complex<double> hankel_sum_deriv(int l, double z, int sign) {
  using cd = std::complex<double>;
  const cd unit(0.0, sign >= 0 ? 1.0 : -1.0);
  cd s = 0.0;
  for (int k = 0; k <= l; ++k) s -= std::pow(unit, k - l - 1) * (k + 1.0) * a_coeff(k, l) / std::pow(z, k + 2);
  return s;
}

inline std::complex<double> radial_basis(radial_kind kind, int l, double x) {
  using cd = std::complex<double>;
  detail::check_radial_args(l, x);
  const double crossover = l + 4.0;
  switch (kind) {
    case radial_kind::j: {
      if (x < crossover) return detail::j_series(l, x);
      double s, c;
      detail::shifted_trig(l, x, s, c);
      return sph_odd_sum(l, x) * s + sph_even_sum(l, x) * c;
    }
    case radial_kind::n: {
      if (x < crossover) return detail::n_series(l, x);
      double s, c;
      detail::shifted_trig(l, x, s, c);
      return -sph_odd_sum(l, x) * c + sph_even_sum(l, x) * s;
    }
    case radial_kind::h1: {
      cd v = std::exp(cd(0.0, x)) * hankel_sum(l, x, +1);
      if (!std::isfinite(std::abs(v))) throw overflow_error("radial_basis: h1 overflow");
      return v;
    }
    case radial_kind::h2: {
      cd v = std::exp(cd(0.0, -x)) * hankel_sum(l, x, -1);
      if (!std::isfinite(std::abs(v))) throw overflow_error("radial_basis: h2 overflow");
      return v;
    }
    case radial_kind::j_evan: {
      // i^{-l} j_l(ix): all terms positive
      double t = std::pow(x, l) / double_factorial(2 * l + 1);
      double s = t;
      const double q = 0.5 * x * x;
      for (int k = 1; k < 1000; ++k) {
        t *= q / (k * (2.0 * l + 2.0 * k + 1.0));
        s += t;
        if (t <= 1e-17 * s) break;
      }
      return s;
    }
    case radial_kind::n_evan: {
      // i^{l+1} n_l(ix)
      double pre = -double_factorial(2 * l - 1) / std::pow(x, l + 1);
      if (!std::isfinite(pre)) throw overflow_error("radial_basis: n_evan overflows for tiny x at this l");
      double t = 1.0, s = 1.0;
      const double q = 0.5 * x * x;
      for (int k = 1; k < 1000; ++k) {
        t *= q / (k * (2.0 * k - 2.0 * l - 1.0));
        s += t;
        if (k > l + 1 && std::abs(t) <= 1e-17 * std::abs(s)) break;
      }
      return pre * s;
    }
  }
  throw domain_error("radial_basis: unknown kind");
}

// d/dx of radial_basis
inline std::complex<double> radial_basis_deriv(radial_kind kind, int l, double x) {
  using cd = std::complex<double>;
  detail::check_radial_args(l, x);
  switch (kind) {
    case radial_kind::h1:
      return std::exp(cd(0.0, x)) * (cd(0.0, 1.0) * hankel_sum(l, x, +1) + hankel_sum_deriv(l, x, +1));
    case radial_kind::h2:
      return std::exp(cd(0.0, -x)) * (cd(0.0, -1.0) * hankel_sum(l, x, -1) + hankel_sum_deriv(l, x, -1));
    case radial_kind::j:
    case radial_kind::n:
      if (l == 0) return -radial_basis(kind, 1, x);
      return radial_basis(kind, l - 1, x) - (l + 1.0) / x * radial_basis(kind, l, x);
    case radial_kind::j_evan:
      if (l == 0) return radial_basis(kind, 1, x);
      return radial_basis(kind, l - 1, x) - (l + 1.0) / x * radial_basis(kind, l, x);
    case radial_kind::n_evan:
      if (l == 0) return -radial_basis(kind, 1, x);
      return -radial_basis(kind, l - 1, x) - (l + 1.0) / x * radial_basis(kind, l, x);
  }
  throw domain_error("radial_basis_deriv: unknown kind");
}

}  // namespace kgm
