// Sign of each candidate j_ab over (omega, l), with poles marked.
// Usage: demo_candidate_landscape [Delta] [d]
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>

#include "kgmodes/ads_complex_structure.hpp"

using namespace kgm;

int main(int argc, char** argv) {
  double Delta = argc > 1 ? std::atof(argv[1]) : 4.2;
  int d = argc > 2 ? std::atoi(argv[2]) : 3;
  ads_params p;
  try {
    p = make_ads_params(d, Delta, 1.0);
  } catch (const error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return static_cast<int>(e.status());
  }
  std::printf("Delta = %g, d = %d   (+ positive, - negative, P pole, O overflow)\n", Delta, d);
  for (int which = 1; which <= 4; ++which) {
    std::printf("\ncandidate %d\n  l \\ omega ", which);
    for (double w = -3.0; w <= 3.0 + 1e-9; w += 0.5) std::printf("%5.1f", w);
    std::printf("\n");
    for (int l = 0; l <= 4; ++l) {
      std::printf("  %-9d ", l);
      for (double w = -3.0; w <= 3.0 + 1e-9; w += 0.5) {
        char c;
        try {
          double v = candidate_jab(which, p, w, l).real();
          c = v > 0 ? '+' : (v < 0 ? '-' : '0');
        } catch (const pole_error&) {
          c = 'P';
        } catch (const overflow_error&) {
          c = 'O';
        }
        std::printf("%5c", c);
      }
      std::printf("\n");
    }
  }
  std::printf("\na positive nondiagonal J needs j_ab < 0\n");
}
