#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "kgmodes/harmonics.hpp"

using namespace kgm;
using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

spherical_point random_point(int d, std::mt19937& rng) {
  std::uniform_real_distribution<double> th(0.05, pi - 0.05), ph(0.0, 2 * pi);
  spherical_point p{d, std::vector<double>(d - 2), ph(rng)};
  for (auto& t : p.theta) t = th(rng);
  return p;
}

Eigen::MatrixXd random_rotation(int d, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = g(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1;
  return q;
}

}  // namespace

TEST(MultiIndex, Validity) {
  EXPECT_TRUE(is_valid(3, {{2}, -2}));
  EXPECT_FALSE(is_valid(3, {{2}, 3}));
  EXPECT_TRUE(is_valid(5, {{3, 2, 1}, -1}));
  EXPECT_FALSE(is_valid(5, {{3, 4, 1}, 0}));
  EXPECT_FALSE(is_valid(4, {{3}, 0}));
  // dimension of degree-l harmonics on S^{d-1}: (2l+d-2)(l+d-3)!/(l!(d-2)!)
  for (int d = 3; d <= 6; ++d)
    for (int l = 0; l <= 5; ++l) {
      double dim = (2.0 * l + d - 2) * std::tgamma(l + d - 2) / (std::tgamma(l + 1) * std::tgamma(d - 1));
      EXPECT_EQ(static_cast<double>(harmonic_indices(d, l).size()), std::round(dim)) << d << " " << l;
    }
}

TEST(NormConst, Examples) {
  EXPECT_NEAR(norm_const(3, {{0}, 0}), 1 / std::sqrt(4 * pi), 1e-15);
  EXPECT_NEAR(norm_const(3, {{1}, 0}), std::sqrt(3 / (4 * pi)), 1e-15);
  EXPECT_NEAR(norm_const(4, {{0, 0}, 0}), 1 / std::sqrt(2 * pi * pi), 1e-15);
  EXPECT_THROW(norm_const(3, {{1}, 2}), domain_error);
}

TEST(EvalHarmonic, Examples) {
  std::mt19937 rng(1);
  for (int i = 0; i < 5; ++i) {
    auto p = random_point(3, rng);
    EXPECT_NEAR(std::abs(eval_harmonic(3, {{0}, 0}, p) - 1 / std::sqrt(4 * pi)), 0.0, 1e-15);
  }
  spherical_point p{3, {pi / 3}, 0.4};
  EXPECT_NEAR(eval_harmonic(3, {{1}, 0}, p).real(), std::sqrt(3 / (4 * pi)) / 2, 1e-15);
}

TEST(EvalHarmonic, TwoSphereAgainstStdWithPhaseFactor) {
  // std::sph_legendre carries the Condon-Shortley phase; ours does not
  std::mt19937 rng(2);
  for (int l = 0; l <= 8; ++l)
    for (int m = -l; m <= l; ++m) {
      auto p = random_point(3, rng);
      int am = std::abs(m);
      double ref = std::sph_legendre(l, am, p.theta[0]);
      if (m < 0) ref *= (am % 2) ? -1.0 : 1.0;  // Y^{-m} = (-1)^m conj(Y^m) for CS harmonics
      double cm = (m > 0 && (m % 2)) ? -1.0 : 1.0;
      cd expect = cm * ref * std::exp(cd(0, m * p.phi));
      EXPECT_LT(std::abs(eval_harmonic(3, {{l}, m}, p) - expect), 1e-13) << l << " " << m;
    }
}

TEST(EvalHarmonic, ThreeSphereDegreeOne) {
  // Y_(1,0;0) = sqrt(2) cos θ_3 / π
  std::mt19937 rng(3);
  for (int i = 0; i < 5; ++i) {
    auto p = random_point(4, rng);
    EXPECT_NEAR(eval_harmonic(4, {{1, 0}, 0}, p).real(), std::sqrt(2.0) * std::cos(p.theta[0]) / pi, 1e-14);
  }
}

TEST(EvalHarmonic, Conjugation) {
  std::mt19937 rng(4);
  for (int d = 3; d <= 6; ++d)
    for (int l = 0; l <= 4; ++l)
      for (const auto& L : harmonic_indices(d, l)) {
        auto p = random_point(d, rng);
        multi_index Lm = L;
        Lm.m = -L.m;
        EXPECT_LT(std::abs(std::conj(eval_harmonic(d, L, p)) - eval_harmonic(d, Lm, p)), 1e-12);
      }
}

TEST(EvalHarmonic, LaplacianEigenfunctionViaFiniteDifference) {
  // Δ_S² Y = -l(l+1) Y on the 2-sphere, checked with central differences
  std::mt19937 rng(5);
  for (int l = 0; l <= 4; ++l)
    for (int m = -l; m <= l; ++m) {
      auto p = random_point(3, rng);
      double h = 1e-4, t = p.theta[0];
      auto Y = [&](double th, double ph) { return eval_harmonic(3, {{l}, m}, {3, {th}, ph}); };
      cd d2t = (Y(t + h, p.phi) - 2.0 * Y(t, p.phi) + Y(t - h, p.phi)) / (h * h);
      cd d1t = (Y(t + h, p.phi) - Y(t - h, p.phi)) / (2 * h);
      cd d2p = (Y(t, p.phi + h) - 2.0 * Y(t, p.phi) + Y(t, p.phi - h)) / (h * h);
      cd lap = d2t + std::cos(t) / std::sin(t) * d1t + d2p / (std::sin(t) * std::sin(t));
      EXPECT_LT(std::abs(lap + double(l * (l + 1)) * Y(t, p.phi)), 1e-5);
    }
}

TEST(LadderCoeffs, Examples) {
  EXPECT_NEAR(ladder_coeffs(3, 1, 0).chi_minus, 1 / std::sqrt(3.0), 1e-15);
  for (int d = 3; d <= 8; ++d)
    for (int l = 0; l <= 6; ++l) {
      EXPECT_EQ(ladder_coeffs(d, l, l).chi_minus, 0.0);
      EXPECT_EQ(ladder_coeffs(d, l, l).delta_minus, 0.0);
      EXPECT_GT(ladder_coeffs(d, l, 0).chi_plus, 0.0);
    }
  // 2-sphere formulas: χ- = sqrt((l-m)(l+m)/((2l-1)(2l+1))), χ+ = sqrt((l-m+1)(l+m+1)/((2l+1)(2l+3)))
  for (int l = 1; l <= 8; ++l)
    for (int m = 0; m <= l; ++m) {
      auto c = ladder_coeffs(3, l, m);
      EXPECT_NEAR(c.chi_minus, std::sqrt((l - m) * (l + m) / ((2.0 * l - 1) * (2.0 * l + 1))), 1e-15);
      EXPECT_NEAR(c.chi_plus, std::sqrt((l - m + 1.0) * (l + m + 1) / ((2.0 * l + 1) * (2.0 * l + 3))), 1e-15);
      EXPECT_DOUBLE_EQ(c.delta_minus, (l + 1) * c.chi_minus);
      EXPECT_DOUBLE_EQ(c.delta_plus, -l * c.chi_plus);
    }
}

TEST(LadderCoeffs, HandyIdentity) {
  for (int d = 3; d <= 8; ++d)
    for (int l = 0; l <= 10; ++l)
      for (int ls = 0; ls <= l; ++ls)
        EXPECT_NEAR(ladder_coeffs(d, l + 1, ls).chi_minus, ladder_coeffs(d, l, ls).chi_plus, 1e-14);
}

TEST(Contiguous, CosineAndDerivativeRelations) {
  std::mt19937 rng(6);
  for (int d = 3; d <= 6; ++d)
    for (int l = 0; l <= 5; ++l)
      for (const auto& L : harmonic_indices(d, l)) {
        int ls = (d == 3) ? std::abs(L.m) : L.levels[1];
        auto c = ladder_coeffs(d, l, ls);
        multi_index up = L, dn = L;
        up.levels[0] = l + 1;
        dn.levels[0] = l - 1;
        for (int i = 0; i < 100; ++i) {
          auto p = random_point(d, rng);
          double x = std::cos(p.theta[0]);
          cd y = eval_harmonic(d, L, p);
          cd yu = eval_harmonic(d, up, p);
          cd yd = is_valid(d, dn) ? eval_harmonic(d, dn, p) : cd(0);
          EXPECT_LT(std::abs(x * y - c.chi_minus * yd - c.chi_plus * yu), 1e-10);
          cd dy = harmonic_top_derivative(d, L, p);
          EXPECT_LT(std::abs(dy - c.delta_minus * yd - c.delta_plus * yu), 1e-10);
        }
      }
}

TEST(Contiguous, DerivativeMatchesFiniteDifference) {
  // (1-x^2) dY/dx = -sin θ dY/dθ
  std::mt19937 rng(7);
  for (int d = 3; d <= 5; ++d)
    for (const auto& L : harmonic_indices(d, 3)) {
      auto p = random_point(d, rng);
      double h = 1e-6;
      auto pp = p, pm = p;
      pp.theta[0] += h;
      pm.theta[0] -= h;
      cd dth = (eval_harmonic(d, L, pp) - eval_harmonic(d, L, pm)) / (2 * h);
      EXPECT_LT(std::abs(harmonic_top_derivative(d, L, p) + std::sin(p.theta[0]) * dth), 1e-7);
    }
}

TEST(Quadrature, GaussGegenbauerExactness) {
  auto r = gauss_gegenbauer(10, 0.5);
  double s = 0;
  for (double w : r.w) s += w;
  EXPECT_NEAR(s, 2.0, 1e-14);
  // ∫ sqrt(1-x^2) x^2 dx = π/8 ; ∫ sqrt(1-x^2) x^18 dx via Beta function
  auto c = gauss_gegenbauer(10, 1.0);
  double s2 = 0, s18 = 0;
  for (std::size_t i = 0; i < c.x.size(); ++i) {
    s2 += c.w[i] * c.x[i] * c.x[i];
    s18 += c.w[i] * std::pow(c.x[i], 18);
  }
  EXPECT_NEAR(s2, pi / 8, 1e-14);
  EXPECT_NEAR(s18, std::tgamma(9.5) * std::tgamma(1.5) / std::tgamma(11.0), 1e-14);
}

TEST(SphereInner, Examples) {
  auto Y = [](int d, multi_index L) { return [d, L](const spherical_point& p) { return eval_harmonic(d, L, p); }; };
  EXPECT_NEAR(std::abs(sphere_inner(3, Y(3, {{0}, 0}), Y(3, {{0}, 0}), 24) - 1.0), 0.0, 1e-10);
  EXPECT_LT(std::abs(sphere_inner(3, Y(3, {{2}, 1}), Y(3, {{2}, 0}), 24)), 1e-10);
  EXPECT_NEAR(std::abs(sphere_inner(4, Y(4, {{1, 1}, 1}), Y(4, {{1, 1}, 1}), 24) - 1.0), 0.0, 1e-8);
  // convergence with order
  double prev = std::abs(sphere_inner(4, Y(4, {{3, 2}, 1}), Y(4, {{3, 2}, 1}), 4) - 1.0);
  double fine = std::abs(sphere_inner(4, Y(4, {{3, 2}, 1}), Y(4, {{3, 2}, 1}), 24) - 1.0);
  EXPECT_LE(fine, std::max(prev, 1e-12));
  EXPECT_THROW(sphere_inner(3, Y(3, {{0}, 0}), Y(3, {{0}, 0}), 3), domain_error);
}

TEST(SphereInner, Orthonormality) {
  for (int d = 3; d <= 5; ++d) {
    auto idx = harmonic_indices_upto(d, 4);
    Eigen::MatrixXcd g = harmonic_gram(d, idx, 24);
    Eigen::MatrixXcd dev = g - Eigen::MatrixXcd::Identity(g.rows(), g.cols());
    EXPECT_LT(dev.cwiseAbs().maxCoeff(), 1e-8) << d;
  }
}

TEST(SphereInner, GramMatchesGenericRule) {
  auto idx = harmonic_indices_upto(5, 2);
  Eigen::MatrixXcd g = harmonic_gram(5, idx, 12);
  std::mt19937 rng(8);
  std::uniform_int_distribution<std::size_t> pick(0, idx.size() - 1);
  for (int t = 0; t < 4; ++t) {
    auto a = idx[pick(rng)], b = idx[pick(rng)];
    cd v = sphere_inner(
        5, [&](const spherical_point& p) { return eval_harmonic(5, a, p); },
        [&](const spherical_point& p) { return eval_harmonic(5, b, p); }, 12);
    std::size_t ia = std::find(idx.begin(), idx.end(), a) - idx.begin();
    std::size_t ib = std::find(idx.begin(), idx.end(), b) - idx.begin();
    EXPECT_LT(std::abs(v - g(ia, ib)), 1e-12);
  }
}

TEST(Cartesian, RoundTrip) {
  std::mt19937 rng(9);
  for (int d = 3; d <= 6; ++d) {
    auto p = random_point(d, rng);
    Eigen::VectorXd x = to_cartesian(p);
    EXPECT_NEAR(x.norm(), 1.0, 1e-14);
    EXPECT_NEAR(x(d - 1), std::cos(p.theta[0]), 1e-15);
    auto q = from_cartesian(x);
    for (int i = 0; i < d - 2; ++i) EXPECT_NEAR(q.theta[i], p.theta[i], 1e-12);
    EXPECT_NEAR(q.phi, p.phi, 1e-12);
  }
}

TEST(Wigner, SmallD) {
  EXPECT_EQ(wigner_small_d(0, 0.7)(0, 0), 1.0);
  EXPECT_LT((wigner_small_d(1, 0.0) - Eigen::MatrixXd::Identity(3, 3)).norm(), 1e-15);
  double b = 0.83;
  auto d1 = wigner_small_d(1, b);
  // index (m'+l, m+l)
  EXPECT_NEAR(d1(1, 1), std::cos(b), 1e-15);
  EXPECT_NEAR(d1(2, 1), -std::sin(b) / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(d1(2, 2), (1 + std::cos(b)) / 2, 1e-15);
  EXPECT_NEAR(d1(0, 2), (1 - std::cos(b)) / 2, 1e-15);
  for (int l = 0; l <= 6; ++l) {
    auto d = wigner_small_d(l, 1.9);
    for (int r = 0; r < 2 * l + 1; ++r) EXPECT_NEAR(d.row(r).squaredNorm(), 1.0, 1e-12);
    EXPECT_LT((d * d.transpose() - Eigen::MatrixXd::Identity(2 * l + 1, 2 * l + 1)).norm(), 1e-12);
  }
}

TEST(Rotation, IdentityLeavesCoefficients) {
  Eigen::VectorXcd c = Eigen::VectorXcd::Random(5);
  auto D = rotation_block_euler(2, 0, 0, 0);
  EXPECT_LT((rotate_coeffs(3, 2, D, c) - c).norm(), 1e-15);
  auto Dq = rotation_block_quadrature(4, 2, Eigen::MatrixXd::Identity(4, 4), 24);
  Eigen::VectorXcd c4 = Eigen::VectorXcd::Random(Dq.rows());
  EXPECT_LT((rotate_coeffs(4, 2, Dq, c4) - c4).norm(), 1e-12);
  EXPECT_THROW(rotate_coeffs(3, 2, D, Eigen::VectorXcd::Zero(3)), domain_error);
}

TEST(Rotation, PhiRotationPhases) {
  std::mt19937 rng(10);
  std::uniform_real_distribution<double> u(0, 2 * pi);
  for (int t = 0; t < 5; ++t) {
    double a = u(rng);
    auto D = rotation_block_euler(1, a, 0, 0);
    Eigen::VectorXcd c(3);
    c << cd(0.3, 0.1), cd(-1.2, 0.4), cd(0.5, -0.9);
    auto r = rotate_coeffs(3, 1, D, c);
    for (int m = -1; m <= 1; ++m) EXPECT_LT(std::abs(r(m + 1) - std::exp(cd(0, -m * a)) * c(m + 1)), 1e-14);
  }
}

TEST(Rotation, PointwiseExpansionTwoSphere) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0, 2 * pi), ub(0, pi);
  for (int l = 0; l <= 3; ++l) {
    double a1 = u(rng), a2 = ub(rng), a3 = u(rng);
    auto R = euler_zyz_rotation(a1, a2, a3);
    auto Dw = rotation_block_euler(l, a1, a2, a3);
    auto Dq = rotation_block_quadrature(3, l, R, 24);
    EXPECT_LT((Dw - Dq).cwiseAbs().maxCoeff(), 1e-10) << l;
    auto idx = harmonic_indices(3, l);
    Eigen::VectorXcd c = Eigen::VectorXcd::Random(idx.size());
    auto cp = rotate_coeffs(3, l, Dw, c);
    for (int t = 0; t < 20; ++t) {
      auto p = random_point(3, rng);
      auto q = rotate_point(R, p);
      cd lhs = 0, rhs = 0;
      for (std::size_t i = 0; i < idx.size(); ++i) {
        lhs += cp(i) * eval_harmonic(3, idx[i], p);
        rhs += c(i) * eval_harmonic(3, idx[i], q);
      }
      EXPECT_LT(std::abs(lhs - rhs), 1e-8);
    }
  }
}

TEST(Rotation, PointwiseExpansionHigherDimension) {
  std::mt19937 rng(12);
  for (int d = 4; d <= 5; ++d) {
    auto R = random_rotation(d, rng);
    for (int l = 0; l <= 2; ++l) {
      auto D = rotation_block_quadrature(d, l, R, 16);
      auto idx = harmonic_indices(d, l);
      Eigen::VectorXcd c = Eigen::VectorXcd::Random(idx.size());
      auto cp = rotate_coeffs(d, l, D, c);
      EXPECT_LT((D * D.adjoint() - Eigen::MatrixXcd::Identity(idx.size(), idx.size())).cwiseAbs().maxCoeff(), 1e-10);
      for (int t = 0; t < 10; ++t) {
        auto p = random_point(d, rng);
        auto q = rotate_point(R, p);
        cd lhs = 0, rhs = 0;
        for (std::size_t i = 0; i < idx.size(); ++i) {
          lhs += cp(i) * eval_harmonic(d, idx[i], p);
          rhs += c(i) * eval_harmonic(d, idx[i], q);
        }
        EXPECT_LT(std::abs(lhs - rhs), 1e-8);
      }
    }
  }
}

TEST(Rotation, WignerCompleteness) {
  std::mt19937 rng(13);
  for (int l = 0; l <= 3; ++l) {
    auto R = random_rotation(3, rng);
    auto D = rotation_block_quadrature(3, l, R, 24);
    Eigen::MatrixXcd g = D * D.adjoint();
    EXPECT_LT((g - Eigen::MatrixXcd::Identity(2 * l + 1, 2 * l + 1)).cwiseAbs().maxCoeff(), 1e-8);
  }
}
