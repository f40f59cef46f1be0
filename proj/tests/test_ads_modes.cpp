#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "kgmodes/ads_modes.hpp"

using namespace kgm;
using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

std::vector<freq_node> sym_grid(std::vector<double> pos, std::vector<double> w) {
  std::vector<freq_node> g;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    g.push_back({pos[i], w[i]});
    if (pos[i] != 0.0) g.push_back({-pos[i], w[i]});
  }
  return g;
}

// Fills every (ω, L) with l <= lmax with a conjugate-paired random coefficient.
mode_vector random_real(int d, const std::vector<freq_node>& grid, int lmax, std::mt19937& rng) {
  std::normal_distribution<double> g;
  mode_vector v(d, grid);
  for (const auto& n : grid) {
    if (n.omega < 0) continue;
    for (const auto& L : harmonic_indices_upto(d, lmax)) {
      multi_index Lb = L;
      Lb.m = -L.m;
      if (n.omega == 0.0 && L.m < 0) continue;
      cd a(g(rng), g(rng)), b(g(rng), g(rng));
      if (n.omega == 0.0 && L.m == 0) a = a.real(), b = b.real();
      v.set(n.omega, L, a, b);
      v.set(-n.omega, Lb, std::conj(a), std::conj(b));
    }
  }
  return v;
}

mode_vector random_complex(int d, const std::vector<freq_node>& grid, int lmax, std::mt19937& rng) {
  std::normal_distribution<double> g;
  mode_vector v(d, grid);
  for (const auto& n : grid)
    for (const auto& L : harmonic_indices_upto(d, lmax)) v.set(n.omega, L, cd(g(rng), g(rng)), cd(g(rng), g(rng)));
  return v;
}

}  // namespace

TEST(AdSParams, Guard) {
  EXPECT_NO_THROW(make_ads_params(3, 1.01, 1.0));
  EXPECT_THROW(make_ads_params(3, 1.0, 1.0), config_error);
  EXPECT_THROW(make_ads_params(5, 2.0, 1.0), config_error);
  EXPECT_THROW(make_ads_params(2, 4.0, 1.0), config_error);
  EXPECT_THROW(make_ads_params(3, 4.0, 0.0), config_error);
  EXPECT_DOUBLE_EQ(delta_from_mass(0.0, 1.0, 3), 3.0);
  EXPECT_DOUBLE_EQ(delta_from_mass(2.0, 1.0, 4), 2.0 + std::sqrt(8.0));
}

TEST(HypergeoParams, Examples) {
  auto p = make_ads_params(3, 4.0, 1.0);
  auto h = hypergeo_params(p, 0.0, 0);
  EXPECT_DOUBLE_EQ(h.alpha_a, 2.0);
  EXPECT_DOUBLE_EQ(h.beta_a, 2.0);
  EXPECT_DOUBLE_EQ(h.gamma, 1.5);
  auto p2 = make_ads_params(5, 4.2, 1.0);
  for (double w : {0.3, 1.7})
    for (int l = 0; l < 4; ++l) {
      EXPECT_DOUBLE_EQ(hypergeo_params(p2, -w, l).alpha_a, hypergeo_params(p2, w, l).beta_a);
      EXPECT_DOUBLE_EQ(hypergeo_params(p2, -w, l).alpha_b, hypergeo_params(p2, w, l).beta_b);
      EXPECT_NEAR(hypergeo_params(p2, w, l).alpha_b - 1, 0.5 * (4.2 - w - l - 5), 1e-15);
      // b parameters are the a parameters shifted by 1 - γ
      auto q = hypergeo_params(p2, w, l);
      EXPECT_NEAR(q.alpha_b, q.alpha_a + 1 - q.gamma, 1e-15);
      EXPECT_NEAR(q.beta_b, q.beta_a + 1 - q.gamma, 1e-15);
    }
  EXPECT_THROW(hypergeo_params(p, 0.0, -1), domain_error);
}

TEST(Radial, LeadingNormalisation) {
  auto p = make_ads_params(3, 4.2, 1.0);
  for (int l = 0; l <= 3; ++l) {
    double rho = 1e-4;
    EXPECT_NEAR(radial_eval(p, 0.7, l, channel::a, rho) / std::pow(std::sin(rho), l), 1.0, 1e-6);
    EXPECT_NEAR(radial_eval(p, 0.7, l, channel::b, rho) / std::pow(std::sin(rho), 2 - 3 - l), 1.0, 1e-6);
  }
  // channel b, d = 3, l = 0 diverges like 1/sin ρ
  EXPECT_NEAR(radial_eval(p, 0.5, 0, channel::b, 1e-6) * std::sin(1e-6), 1.0, 1e-9);
}

TEST(Radial, MasslessClosedParameters) {
  for (int d : {3, 5})
    for (int l = 0; l <= 3; ++l) {
      auto p = make_ads_params(d, d, 1.0);
      for (double rho : {0.2, 0.6, 1.0, 1.3}) {
        double s = std::sin(rho), c = std::cos(rho);
        double ref = std::pow(s, l) * std::pow(c, d) * hyp2f1(0.5 * (d + l), 0.5 * (d + l), l + 0.5 * d, s * s);
        double v = radial_eval(p, 0.0, l, channel::a, rho);
        EXPECT_NEAR(v, ref, 1e-14 * std::abs(ref));
        EXPECT_GT(v, 0.0);
      }
    }
}

TEST(Radial, DerivativeMatchesFiniteDifference) {
  auto p = make_ads_params(5, 3.1, 1.0);
  for (auto ch : {channel::a, channel::b})
    for (int l = 0; l <= 3; ++l)
      for (double rho : {0.25, 0.7, 1.1}) {
        double h = 1e-6;
        double fd = (radial_eval(p, 1.3, l, ch, rho + h) - radial_eval(p, 1.3, l, ch, rho - h)) / (2 * h);
        double an = radial_deriv(p, 1.3, l, ch, rho);
        EXPECT_NEAR(an, fd, 1e-6 * std::max(1.0, std::abs(an)));
      }
}

TEST(Radial, DomainAndPoles) {
  auto p = make_ads_params(3, 4.2, 1.0);
  EXPECT_THROW(radial_eval(p, 0.5, 1, channel::a, 0.0), domain_error);
  EXPECT_THROW(radial_eval(p, 0.5, 1, channel::a, 1.4), domain_error);
  // even d: 2 - γ = 2 - l - d/2 is a nonpositive integer
  auto p4 = make_ads_params(4, 4.2, 1.0);
  EXPECT_THROW(radial_eval(p4, 0.5, 1, channel::b, 0.5), pole_error);
  EXPECT_NO_THROW(radial_eval(p4, 0.5, 1, channel::a, 0.5));
}

TEST(Wronskian, ValueAndConstancy) {
  auto p = make_ads_params(3, 4.2, 1.0);
  double w1 = radial_wronskian(p, 0.7, 1, 0.3), w2 = radial_wronskian(p, 0.7, 1, 0.9);
  EXPECT_NEAR(w1, w2, 1e-8 * std::abs(w1));
  EXPECT_NEAR(w1, -3.0, 1e-9);
  for (int d : {3, 5})
    for (double delta : {3.1, 4.2}) {
      auto q = make_ads_params(d, delta, 1.0);
      for (double om : {0.0, 0.5, 1.3, 2.7})
        for (int l = 0; l <= 3; ++l) {
          double ref = -(2.0 * l + d - 2);
          for (double rho = 0.2; rho <= 1.0 + 1e-12; rho += 0.1)
            EXPECT_NEAR(radial_wronskian(q, om, l, rho), ref, 1e-8 * std::abs(ref)) << d << " " << delta << " " << om << " " << l;
        }
    }
}

TEST(ModeVector, GridValidation) {
  EXPECT_THROW(mode_vector(3, {{0.5, 1.0}}), domain_error);
  EXPECT_THROW(mode_vector(3, {{0.5, 1.0}, {-0.5, 2.0}}), domain_error);
  EXPECT_THROW(mode_vector(3, {{0.5, -1.0}, {-0.5, -1.0}}), domain_error);
  mode_vector v(3, sym_grid({0.5}, {1.0}));
  EXPECT_THROW(v.set(0.7, {{1}, 0}, 1.0, 0.0), domain_error);
  EXPECT_THROW(v.set(0.5, {{1}, 2}, 1.0, 0.0), domain_error);
  v.set(0.5 + 1e-14, {{1}, 0}, 2.0, 3.0);
  EXPECT_EQ(v.get(0.5, {{1}, 0}).a, cd(2.0));
}

TEST(OmegaRho, Examples) {
  auto p = make_ads_params(3, 4.2, 1.0);
  auto grid = sym_grid({0.8}, {1.0});
  mode_vector eta(3, grid), zeta(3, grid);
  eta.set(0.8, {{2}, 0}, 1.0, 0.0);
  zeta.set(-0.8, {{2}, 0}, 0.0, 1.0);
  EXPECT_NEAR(std::abs(omega_rho(p, eta, zeta) - 5 * pi), 0.0, 1e-13);
  std::mt19937 rng(1);
  auto g2 = sym_grid({0.0, 0.5, 1.1}, {0.3, 0.5, 0.2});
  for (int t = 0; t < 5; ++t) {
    auto x = random_complex(3, g2, 2, rng), y = random_complex(3, g2, 2, rng);
    EXPECT_LT(std::abs(omega_rho(p, x, x)), 1e-12);
    EXPECT_LT(std::abs(omega_rho(p, x, y) + omega_rho(p, y, x)), 1e-12);
    auto r1 = random_real(3, g2, 2, rng), r2 = random_real(3, g2, 2, rng);
    EXPECT_TRUE(is_real_solution(r1));
    EXPECT_LT(std::abs(omega_rho(p, r1, r2).imag()), 1e-12);
    // bilinearity
    auto s = linear_combination(cd(2.0, -1.0), x, cd(0.5, 0.0), r1);
    cd lhs = omega_rho(p, s, y);
    cd rhs = cd(2.0, -1.0) * omega_rho(p, x, y) + 0.5 * omega_rho(p, r1, y);
    EXPECT_LT(std::abs(lhs - rhs), 1e-11);
  }
  auto p5 = make_ads_params(5, 4.2, 2.0);
  mode_vector e5(5, grid), z5(5, grid);
  e5.set(0.8, {{1, 0, 0}, 0}, 1.0, 0.0);
  z5.set(-0.8, {{1, 0, 0}, 0}, 0.0, 1.0);
  EXPECT_NEAR(omega_rho(p5, e5, z5).real(), pi * 16 * 5, 1e-11);
  mode_vector other(3, sym_grid({0.9}, {1.0}));
  EXPECT_THROW(omega_rho(p, eta, other), domain_error);
}

TEST(Reality, Predicate) {
  auto grid = sym_grid({0.5}, {1.0});
  mode_vector z(3, grid);
  EXPECT_TRUE(is_real_solution(z));
  mode_vector one(3, grid);
  one.set(0.5, {{1}, 1}, cd(1, 2), 0.0);
  EXPECT_FALSE(is_real_solution(one));
  one.set(-0.5, {{1}, -1}, cd(1, -2), 0.0);
  EXPECT_TRUE(is_real_solution(one));
  one.set(-0.5, {{1}, -1}, cd(1, -2), cd(0, 1e-9));
  EXPECT_FALSE(is_real_solution(one));
}

TEST(Isometry, TimeTranslation) {
  auto p = make_ads_params(3, 4.2, 1.0);
  std::mt19937 rng(2);
  auto g = sym_grid({0.0, 0.4, 1.3}, {0.2, 0.5, 0.3});
  auto x = random_real(3, g, 2, rng), y = random_real(3, g, 2, rng);
  auto id = act_isometry(p, time_translation{0.0}, x);
  EXPECT_LT(distance(id, x), 1e-15);
  auto xt = act_isometry(p, time_translation{0.83}, x), yt = act_isometry(p, time_translation{0.83}, y);
  EXPECT_LT(std::abs(omega_rho(p, xt, yt) - omega_rho(p, x, y)), 1e-12);
  EXPECT_TRUE(is_real_solution(xt));
  EXPECT_LT(std::abs(xt.get(1.3, {{1}, 0}).a - std::exp(cd(0, 1.3 * 0.83)) * x.get(1.3, {{1}, 0}).a), 1e-14);
}

TEST(Isometry, Rotation) {
  std::mt19937 rng(3);
  auto g = sym_grid({0.0, 0.7}, {0.4, 0.6});
  for (int d : {3, 4}) {
    auto p = make_ads_params(d, 4.2, 1.0);
    auto x = random_real(d, g, 2, rng), y = random_real(d, g, 2, rng);
    rotation rot;
    Eigen::MatrixXd R = Eigen::MatrixXd::Identity(d, d);
    double c = std::cos(0.9), s = std::sin(0.9);
    // mixes the first and last axes, so both θ and φ change
    R(0, 0) = c, R(0, d - 1) = -s, R(d - 1, 0) = s, R(d - 1, d - 1) = c;
    for (int l = 0; l <= 2; ++l) rot.blocks[l] = rotation_block_quadrature(d, l, R, 16);
    auto xr = act_isometry(p, rot, x), yr = act_isometry(p, rot, y);
    EXPECT_LT(std::abs(omega_rho(p, xr, yr) - omega_rho(p, x, y)), 1e-10);
    EXPECT_GT(distance(xr, x), 1e-3);
    rotation partial;
    partial.blocks[0] = rot.blocks[0];
    EXPECT_THROW(act_isometry(p, partial, x), domain_error);
  }
}
