#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kgmodes/errors.hpp"

namespace kgm {

// ---- fields on a periodic box at fixed time ----

struct sampled_field {
  std::vector<int> shape;
  std::vector<double> box;
  std::vector<std::complex<double>> value;
  std::vector<std::complex<double>> dt;  // ∂_t at the same nodes

  double cell_volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < shape.size(); ++i) v *= box[i] / shape[i];
    return v;
  }
};

using field_sampler = std::function<std::pair<std::complex<double>, std::complex<double>>(const std::vector<double>&)>;

// Nodes x_j = j L / n along each axis, first axis slowest.
inline sampled_field sample_field(const std::vector<int>& shape, const std::vector<double>& box, const field_sampler& f) {
  if (shape.empty() || shape.size() > 3 || shape.size() != box.size())
    throw domain_error("sample_field: need 1 to 3 axes with matching box lengths");
  std::size_t total = 1;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (shape[i] < 1 || !(box[i] > 0.0)) throw domain_error("sample_field: empty grid or box");
    total *= shape[i];
  }
  sampled_field s{shape, box, {}, {}};
  std::vector<int> idx(shape.size(), 0);
  std::vector<double> x(shape.size());
  for (std::size_t n = 0; n < total; ++n) {
    for (std::size_t i = 0; i < shape.size(); ++i) x[i] = idx[i] * box[i] / shape[i];
    auto [v, d] = f(x);
    s.value.push_back(v);
    s.dt.push_back(d);
    for (int i = static_cast<int>(shape.size()) - 1; i >= 0; --i) {
      if (++idx[i] < shape[i]) break;
      idx[i] = 0;
    }
  }
  return s;
}

struct theta_omega {
  std::complex<double> theta_eta_of_zeta;
  std::complex<double> omega;
};

// Flat metric with g_00 = g^tt = -1 on a constant-t surface:
// θ_η(ζ) = -σ sign(g_00) ∫ √|g| g^tt ζ ∂_t η = -σ ∫ ζ η̇ and ω(η,ζ) = (θ_η(ζ) - θ_ζ(η)) / 2
inline theta_omega theta_omega_quadrature(const sampled_field& eta, const sampled_field& zeta, int orientation = 1) {
  if (eta.shape != zeta.shape || eta.box != zeta.box) throw domain_error("theta_omega_quadrature: grid mismatch");
  if (orientation != 1 && orientation != -1) throw domain_error("orientation must be +1 or -1");
  const double g00 = -1.0, gtt = -1.0, sqrtg = 1.0;
  double pre = -orientation * (g00 < 0 ? -1.0 : 1.0) * sqrtg * gtt * eta.cell_volume();
  std::complex<double> a = 0.0, b = 0.0;
  for (std::size_t i = 0; i < eta.value.size(); ++i) {
    a += zeta.value[i] * eta.dt[i];
    b += eta.value[i] * zeta.dt[i];
  }
  std::complex<double> th_ez = pre * a, th_ze = pre * b;
  return {th_ez, 0.5 * (th_ez - th_ze)};
}

// ---- finite-dimensional model ----

struct symplectic_space {
  Eigen::MatrixXd omega;

  int dim() const { return static_cast<int>(omega.rows()); }
  double form(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const { return u.dot(omega * v); }
  // bilinear extension
  std::complex<double> form(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const {
    return (u.transpose() * omega.cast<std::complex<double>>() * v)(0, 0);
  }
};

inline Eigen::MatrixXd standard_omega(int n) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  w.topRightCorner(n, n).setIdentity();
  w.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return w;
}

inline symplectic_space make_symplectic_space(const Eigen::MatrixXd& omega, double tol = 1e-12) {
  if (omega.rows() != omega.cols() || omega.rows() % 2 || omega.rows() == 0)
    throw domain_error("symplectic form must be square of even dimension");
  if ((omega + omega.transpose()).cwiseAbs().maxCoeff() > tol * std::max(1.0, omega.cwiseAbs().maxCoeff()))
    throw domain_error("symplectic form is not antisymmetric");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(omega);
  if (!lu.isInvertible()) throw domain_error("symplectic form is degenerate");
  return {omega};
}

struct complex_structure {
  Eigen::MatrixXd J;
};

// Checks J^2 = -1 and J^T ω J = ω.
inline complex_structure make_complex_structure(const symplectic_space& sp, const Eigen::MatrixXd& J, double tol = 1e-10) {
  int n = sp.dim();
  if (J.rows() != n || J.cols() != n) throw domain_error("complex structure has wrong size");
  Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  if ((J * J + I).cwiseAbs().maxCoeff() > tol) throw invariant_error("J^2 != -1");
  if ((J.transpose() * sp.omega * J - sp.omega).cwiseAbs().maxCoeff() > tol * sp.omega.cwiseAbs().maxCoeff())
    throw invariant_error("J is not compatible with the symplectic form");
  return {J};
}

// g(u,v) = 2ω(u, Jv)
inline double g_product(const symplectic_space& sp, const complex_structure& J, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  return 2.0 * sp.form(u, J.J * v);
}

// {u,v} = g(u,v) + 2iω(u,v)
inline std::complex<double> inner_product(const symplectic_space& sp, const complex_structure& J, const Eigen::VectorXd& u,
                                          const Eigen::VectorXd& v) {
  return {g_product(sp, J, u, v), 2.0 * sp.form(u, v)};
}

inline std::complex<double> inner_product(const symplectic_space& sp, const complex_structure& J, const Eigen::VectorXcd& u,
                                          const Eigen::VectorXcd& v) {
  Eigen::VectorXcd Jv = J.J.cast<std::complex<double>>() * v;
  return 2.0 * sp.form(u, Jv) + std::complex<double>(0, 2) * sp.form(u, v);
}

// P^± v = (v ∓ iJv) / 2
inline Eigen::VectorXcd polarization_project(const complex_structure& J, int sign, const Eigen::VectorXcd& v) {
  if (sign != 1 && sign != -1) throw domain_error("polarization sign must be +1 or -1");
  if (v.size() != J.J.rows()) throw domain_error("polarization_project: dimension mismatch");
  Eigen::VectorXcd Jv = J.J.cast<std::complex<double>>() * v;
  return 0.5 * (v - std::complex<double>(0, sign) * Jv);
}

// Orientation reversal sends (ω, J) to (-ω, -J).
inline std::pair<symplectic_space, complex_structure> reverse_orientation(const symplectic_space& sp, const complex_structure& J) {
  return {symplectic_space{-sp.omega}, complex_structure{-J.J}};
}

namespace detail {

inline int numeric_rank(const Eigen::MatrixXd& a, double tol = 1e-9) {
  if (a.cols() == 0 || a.rows() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++r;
  return r;
}

inline Eigen::MatrixXd hcat(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd c(a.rows(), a.cols() + b.cols());
  c << a, b;
  return c;
}

}  // namespace detail

inline bool same_span(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  int ra = detail::numeric_rank(a), rb = detail::numeric_rank(b);
  return ra == rb && detail::numeric_rank(detail::hcat(a, b)) == ra;
}

// Basis (columns) of {w : ω(b_i, w) = 0 for all i}.
inline Eigen::MatrixXd symplectic_complement(const symplectic_space& sp, const Eigen::MatrixXd& basis) {
  int n = sp.dim();
  if (basis.rows() != n) throw domain_error("symplectic_complement: dimension mismatch");
  if (basis.cols() == 0) return Eigen::MatrixXd::Identity(n, n);
  if (detail::numeric_rank(basis) != basis.cols()) throw domain_error("symplectic_complement: basis is rank deficient");
  Eigen::MatrixXd m = basis.transpose() * sp.omega;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  int r = detail::numeric_rank(m);
  return svd.matrixV().rightCols(n - r);
}

enum class subspace_kind { lagrangian, isotropic, coisotropic, symplectic, none };

struct subspace_class {
  bool isotropic = false, coisotropic = false, lagrangian = false, symplectic = false;
  subspace_kind primary = subspace_kind::none;
};

inline subspace_class classify_subspace(const symplectic_space& sp, const Eigen::MatrixXd& basis) {
  Eigen::MatrixXd c = symplectic_complement(sp, basis);
  auto contained = [](const Eigen::MatrixXd& s, const Eigen::MatrixXd& t) {
    return detail::numeric_rank(detail::hcat(t, s)) == detail::numeric_rank(t);
  };
  subspace_class r;
  r.isotropic = contained(basis, c);
  r.coisotropic = contained(c, basis);
  r.lagrangian = r.isotropic && r.coisotropic;
  r.symplectic = detail::numeric_rank(detail::hcat(basis, c)) == basis.cols() + c.cols();
  if (r.lagrangian)
    r.primary = subspace_kind::lagrangian;
  else if (r.isotropic)
    r.primary = subspace_kind::isotropic;
  else if (r.coisotropic)
    r.primary = subspace_kind::coisotropic;
  else if (r.symplectic)
    r.primary = subspace_kind::symplectic;
  return r;
}

inline const char* to_string(subspace_kind k) {
  switch (k) {
    case subspace_kind::lagrangian: return "lagrangian";
    case subspace_kind::isotropic: return "isotropic";
    case subspace_kind::coisotropic: return "coisotropic";
    case subspace_kind::symplectic: return "symplectic";
    default: return "none";
  }
}

// |ω(Ku, v) + ω(u, Kv)|
inline double invariance_residual(const symplectic_space& sp, const Eigen::MatrixXd& K, const Eigen::VectorXd& u,
                                  const Eigen::VectorXd& v) {
  return std::abs(sp.form(K * u, v) + sp.form(u, K * v));
}

// Largest residual over pairs of basis vectors.
inline double max_invariance_residual(const symplectic_space& sp, const Eigen::MatrixXd& K) {
  return (K.transpose() * sp.omega + sp.omega * K).cwiseAbs().maxCoeff();
}

inline Eigen::MatrixXd commutator(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return a * b - b * a; }

}  // namespace kgm
