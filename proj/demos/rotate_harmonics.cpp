// Rotates a random degree-l expansion on S^2 and S^3 and compares it with the
// original expansion evaluated at the rotated point.
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "kgmodes/harmonics.hpp"

using namespace kgm;
using cd = std::complex<double>;

static Eigen::MatrixXd random_rotation(int d, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = g(rng);
  Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();
  if (q.determinant() < 0) q.col(0) *= -1;
  return q;
}

int main() {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> th(0.1, std::numbers::pi - 0.1), ph(0.0, 2 * std::numbers::pi);
  std::printf("%3s %3s %6s %14s %14s\n", "d", "l", "dim", "|DD^+ - 1|", "max pointwise");
  for (int d : {3, 4}) {
    auto R = random_rotation(d, rng);
    for (int l = 0; l <= 3; ++l) {
      auto idx = harmonic_indices(d, l);
      auto D = rotation_block_quadrature(d, l, R, 20);
      double unit = (D * D.adjoint() - Eigen::MatrixXcd::Identity(idx.size(), idx.size())).cwiseAbs().maxCoeff();
      Eigen::VectorXcd c = Eigen::VectorXcd::Random(idx.size());
      auto cr = rotate_coeffs(d, l, D, c);
      double worst = 0.0;
      for (int k = 0; k < 50; ++k) {
        spherical_point p{d, std::vector<double>(d - 2), ph(rng)};
        for (auto& t : p.theta) t = th(rng);
        auto q = rotate_point(R, p);
        cd lhs = 0, rhs = 0;
        for (std::size_t i = 0; i < idx.size(); ++i) {
          lhs += cr(i) * eval_harmonic(d, idx[i], p);
          rhs += c(i) * eval_harmonic(d, idx[i], q);
        }
        worst = std::max(worst, std::abs(lhs - rhs));
      }
      std::printf("%3d %3d %6zu %14.3e %14.3e\n", d, l, idx.size(), unit, worst);
    }
  }
}
