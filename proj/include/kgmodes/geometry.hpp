#pragma once

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "kgmodes/errors.hpp"

namespace kgm {

using rational = boost::rational<long long>;

// Flat metric diag(η) on R^{p,q}; the first p entries are timelike (-1).
struct signature {
  int p = 0, q = 0;
  std::vector<int> eta;
  int dim() const { return p + q; }
};

inline signature make_signature(int p, int q) {
  if (p < 0 || q < 0 || p + q < 1) throw domain_error("signature: need p, q >= 0 and p + q >= 1");
  signature s{p, q, std::vector<int>(p + q, 1)};
  for (int i = 0; i < p; ++i) s.eta[i] = -1;
  return s;
}

// Polynomial in n variables with exact rational coefficients.
class polynomial {
 public:
  using monomial = std::vector<int>;

  polynomial() = default;
  explicit polynomial(int n) : n_(n) {}

  static polynomial constant(int n, rational c) {
    polynomial p(n);
    p.add(monomial(n, 0), c);
    return p;
  }
  static polynomial variable(int n, int i) {
    polynomial p(n);
    monomial e(n, 0);
    e.at(i) = 1;
    p.add(e, 1);
    return p;
  }

  int nvars() const { return n_; }
  const std::map<monomial, rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int v : e) s += v;
      d = std::max(d, s);
    }
    return d;
  }

  polynomial derivative(int i) const {
    polynomial r(n_);
    for (const auto& [e, c] : terms_)
      if (e[i] > 0) {
        monomial f = e;
        --f[i];
        r.add(f, c * static_cast<long long>(e[i]));
      }
    return r;
  }

  double eval(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != n_) throw domain_error("polynomial::eval: wrong number of variables");
    double s = 0.0;
    for (const auto& [e, c] : terms_) {
      double t = boost::rational_cast<double>(c);
      for (int i = 0; i < n_; ++i) t *= std::pow(x[i], e[i]);
      s += t;
    }
    return s;
  }

  friend polynomial operator+(const polynomial& a, const polynomial& b) {
    polynomial r = a;
    r.n_ = std::max(a.n_, b.n_);
    for (const auto& [e, c] : b.terms_) r.add(e, c);
    return r;
  }
  friend polynomial operator-(const polynomial& a, const polynomial& b) { return a + b * rational(-1); }
  friend polynomial operator*(const polynomial& a, rational s) {
    polynomial r(a.n_);
    if (s != rational(0))
      for (const auto& [e, c] : a.terms_) r.terms_[e] = c * s;
    return r;
  }
  friend polynomial operator*(const polynomial& a, const polynomial& b) {
    polynomial r(std::max(a.n_, b.n_));
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        monomial e = ea;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        r.add(e, ca * cb);
      }
    return r;
  }
  friend bool operator==(const polynomial& a, const polynomial& b) { return a.terms_ == b.terms_; }

 private:
  void add(const monomial& e, rational c) {
    if (c == rational(0)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == rational(0)) terms_.erase(it);
    }
  }

  int n_ = 0;
  std::map<monomial, rational> terms_;
};

using poly_matrix = std::vector<std::vector<polynomial>>;

inline bool is_zero(const poly_matrix& m) {
  for (const auto& row : m)
    for (const auto& p : row)
      if (!p.is_zero()) return false;
  return true;
}

struct poly_vector_field {
  int n = 0;
  std::vector<polynomial> comp;
  bool flagged_zero = false;  // K_AA was requested

  bool is_zero() const {
    for (const auto& c : comp)
      if (!c.is_zero()) return false;
    return true;
  }

  // V(f) = V^P ∂_P f
  polynomial apply(const polynomial& f) const {
    polynomial r(n);
    for (int i = 0; i < n; ++i) r = r + comp[i] * f.derivative(i);
    return r;
  }

  std::vector<double> eval(const std::vector<double>& x) const {
    std::vector<double> v;
    for (const auto& c : comp) v.push_back(c.eval(x));
    return v;
  }

  friend poly_vector_field operator*(const poly_vector_field& v, rational s) {
    poly_vector_field r{v.n, {}, false};
    for (const auto& c : v.comp) r.comp.push_back(c * s);
    return r;
  }
  friend poly_vector_field operator+(const poly_vector_field& a, const poly_vector_field& b) {
    poly_vector_field r{a.n, {}, false};
    for (int i = 0; i < a.n; ++i) r.comp.push_back(a.comp[i] + b.comp[i]);
    return r;
  }
  friend bool operator==(const poly_vector_field& a, const poly_vector_field& b) { return a.comp == b.comp; }
};

namespace detail {
inline void check_label(const signature& s, int a) {
  if (a < 0 || a >= s.dim()) throw domain_error("label out of range: " + std::to_string(a));
}
}  // namespace detail

// (K_AB)^Q = X_A δ^Q_B - X_B δ^Q_A with X_A = η_AA x^A
inline poly_vector_field killing_field(const signature& s, int A, int B) {
  detail::check_label(s, A);
  detail::check_label(s, B);
  int n = s.dim();
  poly_vector_field v{n, std::vector<polynomial>(n, polynomial(n)), A == B};
  if (A == B) return v;
  v.comp[B] = polynomial::variable(n, A) * rational(s.eta[A]);
  v.comp[A] = polynomial::variable(n, B) * rational(-s.eta[B]);
  return v;
}

inline poly_vector_field translation(const signature& s, int A) {
  detail::check_label(s, A);
  int n = s.dim();
  poly_vector_field v{n, std::vector<polynomial>(n, polynomial(n)), false};
  v.comp[A] = polynomial::constant(n, 1);
  return v;
}

// η_NN ∂_M V^N + η_MM ∂_N V^M
inline poly_matrix killing_residual(const signature& s, const poly_vector_field& V) {
  int n = s.dim();
  if (V.n != n) throw domain_error("killing_residual: dimension mismatch");
  poly_matrix r(n, std::vector<polynomial>(n, polynomial(n)));
  for (int M = 0; M < n; ++M)
    for (int N = 0; N < n; ++N)
      r[M][N] = V.comp[N].derivative(M) * rational(s.eta[N]) + V.comp[M].derivative(N) * rational(s.eta[M]);
  return r;
}

inline poly_vector_field lie_bracket(const poly_vector_field& V, const poly_vector_field& W) {
  if (V.n != W.n) throw domain_error("lie_bracket: dimension mismatch");
  poly_vector_field r{V.n, {}, false};
  for (int q = 0; q < V.n; ++q) r.comp.push_back(V.apply(W.comp[q]) - W.apply(V.comp[q]));
  return r;
}

struct structure_report {
  int generators = 0;
  int brackets_checked = 0;
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};

inline structure_report structure_check(const signature& s) {
  int n = s.dim();
  if (n > 8) throw domain_error("structure_check: p + q must be <= 8");
  auto eta = [&](int a, int b) { return rational(a == b ? s.eta[a] : 0); };
  auto K = [&](int a, int b) { return killing_field(s, a, b); };
  auto T = [&](int a) { return translation(s, a); };
  structure_report rep;
  rep.generators = n * (n - 1) / 2 + n;
  auto record = [&](bool ok, const std::string& what) {
    ++rep.brackets_checked;
    if (!ok) rep.mismatches.push_back(what);
  };
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
          auto lhs = lie_bracket(K(a, b), K(c, d));
          auto rhs = K(b, d) * -eta(a, c) + K(a, d) * eta(b, c) + K(a, c) * -eta(b, d) + K(b, c) * eta(a, d);
          record(lhs == rhs, "[K" + std::to_string(a) + std::to_string(b) + ",K" + std::to_string(c) + std::to_string(d) + "]");
        }
  for (int al = 0; al < n; ++al) {
    for (int mu = 0; mu < n; ++mu)
      for (int nu = mu + 1; nu < n; ++nu) {
        auto lhs = lie_bracket(T(al), K(mu, nu));
        auto rhs = T(nu) * eta(al, mu) + T(mu) * -eta(al, nu);
        record(lhs == rhs, "[T" + std::to_string(al) + ",K" + std::to_string(mu) + std::to_string(nu) + "]");
      }
    for (int be = 0; be < n; ++be)
      record(lie_bracket(T(al), T(be)).is_zero(), "[T" + std::to_string(al) + ",T" + std::to_string(be) + "]");
  }
  return rep;
}

// ---- Minkowski R^{1,3} in (t, r, ξ) coordinates ----

enum class mink_kind { T0, Tj, Kjk, K0j };

// Coefficients of ∂_t, ∂_r and of the tangential ∂_ξ (ambient components, orthogonal to ξ).
struct frame_components {
  double t = 0.0, r = 0.0;
  std::array<double, 3> xi{};
};

// Labels j, k run over 1..3.
inline frame_components minkowski_killing_spherical(mink_kind kind, int j, int k, double t, double r,
                                                    const std::array<double, 3>& xi) {
  if (!(r > 0.0)) throw domain_error("minkowski_killing_spherical: r must be positive");
  double n2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
  if (std::abs(n2 - 1.0) > 1e-12) throw domain_error("minkowski_killing_spherical: |xi| != 1");
  auto label = [](int a) {
    if (a < 1 || a > 3) throw domain_error("spatial label must be 1..3");
    return a - 1;
  };
  // ∂_{ξ_k} - ξ_k ξ_i ∂_{ξ_i}
  auto tangential = [&](int a, double scale) {
    std::array<double, 3> v{};
    for (int i = 0; i < 3; ++i) v[i] = scale * ((i == a ? 1.0 : 0.0) - xi[a] * xi[i]);
    return v;
  };
  frame_components c;
  switch (kind) {
    case mink_kind::T0:
      c.t = 1.0;
      break;
    case mink_kind::Tj: {
      int a = label(j);
      c.r = xi[a];
      c.xi = tangential(a, 1.0 / r);
      break;
    }
    case mink_kind::Kjk: {
      int a = label(j), b = label(k);
      if (a == b) throw domain_error("K_jk needs j != k");
      c.xi[b] += xi[a];
      c.xi[a] -= xi[b];
      break;
    }
    case mink_kind::K0j: {
      int a = label(j);
      c.t = -r * xi[a];
      c.r = -t * xi[a];
      c.xi = tangential(a, -t / r);
      break;
    }
  }
  return c;
}

// (dθ, dφ) of a tangential ξ-vector, ξ = (sin θ cos φ, sin θ sin φ, cos θ)
inline std::array<double, 2> angular_components(const std::array<double, 3>& xi, const std::array<double, 3>& v) {
  double rho2 = xi[0] * xi[0] + xi[1] * xi[1];
  if (!(rho2 > 0.0)) throw domain_error("angular_components: polar axis");
  return {-v[2] / std::sqrt(rho2), (xi[0] * v[1] - xi[1] * v[0]) / rho2};
}

// Cartesian components (x^0, x^1, x^2, x^3) of a frame vector at radius r.
inline std::array<double, 4> to_cartesian_components(double r, const std::array<double, 3>& xi, const frame_components& c) {
  std::array<double, 4> out{c.t, 0.0, 0.0, 0.0};
  for (int i = 0; i < 3; ++i) out[i + 1] = c.r * xi[i] + r * c.xi[i];
  return out;
}

}  // namespace kgm
