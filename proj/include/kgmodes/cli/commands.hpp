#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "kgmodes/ads_complex_structure.hpp"
#include "kgmodes/ads_modes.hpp"
#include "kgmodes/cli/config.hpp"
#include "kgmodes/cli/table.hpp"
#include "kgmodes/flux.hpp"
#include "kgmodes/geometry.hpp"
#include "kgmodes/harmonics.hpp"
#include "kgmodes/io.hpp"
#include "kgmodes/specfun.hpp"
#include "kgmodes/structures.hpp"

namespace kgm::cli {

struct command_result {
  table report;
  exit_status status = exit_status::ok;
};

inline exit_status worst(exit_status a, exit_status b) { return static_cast<int>(a) >= static_cast<int>(b) ? a : b; }

inline std::string levels_text(const multi_index& L) {
  std::string s;
  for (std::size_t i = 0; i < L.levels.size(); ++i) s += (i ? " " : "") + std::to_string(L.levels[i]);
  return s;
}

// ---- selfcheck ----

struct named_check {
  std::string module, name;
  std::function<bool()> run;
};

inline std::vector<named_check> selfcheck_suite(const sweep_config& c) {
  using cd = std::complex<double>;
  std::vector<named_check> s;
  s.push_back({"specfun", "gamma_integer", [] { return std::abs(gamma_fn(6.0) - 120.0) < 1e-11; }});
  s.push_back({"specfun", "hyp2f1_log", [] {
                 double z = 0.6;
                 return std::abs(hyp2f1(1, 1, 2, z) + std::log(1 - z) / z) < 1e-12;
               }});
  s.push_back({"specfun", "hankel_modulus", [] {
                 for (int l = 0; l <= 6; ++l)
                   for (double x : {0.5, 3.0, 17.0}) {
                     double j = radial_basis(radial_kind::j, l, x).real(), n = radial_basis(radial_kind::n, l, x).real();
                     if (std::abs(std::norm(radial_basis(radial_kind::h1, l, x)) - j * j - n * n) > 1e-10 * (1 + j * j + n * n))
                       return false;
                   }
                 return true;
               }});
  s.push_back({"harmonics", "orthonormality_d3_d4", [order = c.quadrature_order] {
                 for (int d : {3, 4}) {
                   auto idx = harmonic_indices_upto(d, 3);
                   auto g = harmonic_gram(d, idx, order);
                   if ((g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff() > 1e-8) return false;
                 }
                 return true;
               }});
  s.push_back({"harmonics", "ladder_shift", [] {
                 for (int d = 3; d <= 6; ++d)
                   for (int l = 0; l <= 5; ++l)
                     for (int ls = 0; ls <= l; ++ls)
                       if (std::abs(ladder_coeffs(d, l + 1, ls).chi_minus - ladder_coeffs(d, l, ls).chi_plus) > 1e-14) return false;
                 return true;
               }});
  s.push_back({"harmonics", "wigner_unitary", [] {
                 for (int l = 0; l <= 3; ++l) {
                   auto D = wigner_D(l, 0.3, 1.1, -0.7);
                   if ((D.adjoint() * D - Eigen::MatrixXcd::Identity(D.rows(), D.cols())).cwiseAbs().maxCoeff() > 1e-12) return false;
                 }
                 return true;
               }});
  s.push_back({"geometry", "so_1_3_structure", [] { return structure_check(make_signature(1, 3)).ok(); }});
  s.push_back({"geometry", "so_2_3_structure", [] { return structure_check(make_signature(2, 3)).ok(); }});
  s.push_back({"structures", "standard_complex_structure", [] {
                 auto sp = make_symplectic_space(standard_omega(2));
                 auto J = make_complex_structure(sp, -standard_omega(2));
                 Eigen::VectorXd e = Eigen::VectorXd::Unit(4, 0);
                 return std::abs(g_product(sp, J, e, e) - 2.0) < 1e-14;
               }});
  s.push_back({"structures", "plane_wave_omega", [] {
                 double E = 1.3, k = 2 * std::numbers::pi / 4.0;
                 auto eta = sample_field({64}, {4.0}, [&](const std::vector<double>& x) {
                   return std::pair<cd, cd>{std::cos(-k * x[0]), -E * std::sin(-k * x[0])};
                 });
                 auto zeta = sample_field({64}, {4.0}, [&](const std::vector<double>& x) {
                   return std::pair<cd, cd>{std::sin(-k * x[0]), E * std::cos(-k * x[0])};
                 });
                 return std::abs(theta_omega_quadrature(eta, zeta).omega - E * 4.0 / 2) < 1e-10;
               }});
  s.push_back({"ads_modes", "wronskian", [] {
                 auto p = make_ads_params(3, 4.2, 1.0);
                 for (int l = 0; l <= 3; ++l)
                   for (double rho : {0.2, 0.6, 1.0})
                     if (std::abs(radial_wronskian(p, 0.7, l, rho) + (2.0 * l + 1)) > 1e-8 * (2.0 * l + 1)) return false;
                 return true;
               }});
  s.push_back({"ads_complex_structure", "candidate_boost_recurrences", [tol = c.tolerance] {
                 for (int d : {3, 5}) {
                   auto p = make_ads_params(d, 4.2, 1.0);
                   for (int k = 1; k <= 4; ++k) {
                     auto f = [&](double w, int l) { return candidate_jab(k, p, w, l); };
                     for (double w : {-1.0, 0.0, 0.5})
                       for (int l = 0; l <= 2; ++l) {
                         auto r = boost_recurrence_residual(p, f, w, l);
                         double sc = std::max({std::abs(f(w, l)), std::abs(f(w - 1, l + 1)), std::abs(f(w + 1, l + 1))});
                         if (std::max(r.res_minus, r.res_plus) > tol * sc) return false;
                       }
                   }
                 }
                 return true;
               }});
  s.push_back({"ads_complex_structure", "completion_conditions", [] {
                 for (double jab : {-0.3, -1.0, -4.0})
                   if (!check_entry(complete_nondiagonal(jab, 0.5)).essential_ok()) return false;
                 return true;
               }});
  s.push_back({"ads_complex_structure", "diagonal_preset", [] {
                 std::vector<freq_node> g{{-1.0, 1.0}, {-0.5, 1.0}, {0.5, 1.0}, {1.0, 1.0}};
                 auto r = check_conditions(diagonal_jfactors(g, 2));
                 return r.essential_ok() && r.kase == j_case::diagonal && !r.positivity_ok;
               }});
  s.push_back({"flux", "minkowski_hankel", [] {
                 return std::abs(minkowski_hankel_flux(2.0, 1.0, 2, 5.0).flux_per_time - 4 / std::sqrt(3.0)) < 1e-8;
               }});
  s.push_back({"flux", "ads_combined", [] {
                 auto p = make_ads_params(3, 4.2, 1.0);
                 auto [f, fp] = ads_combined_radial(p, 0.7, 1, 0.5, 1.5);
                 auto v = mode_flux(spacetime::ads, p, 0.7, 0.5, f, fp);
                 return v.verdict == direction::outgoing && std::abs(v.flux_per_time - 4 * 0.7 / 1.5) < 1e-8;
               }});
  s.push_back({"flux", "extrema_cos_sin", [] {
                 std::vector<double> t, a, b;
                 for (int i = 0; i <= 2000; ++i) {
                   t.push_back(0.01 * i);
                   a.push_back(std::cos(t.back()));
                   b.push_back(std::sin(t.back()));
                 }
                 return extrema_relation(t, a, b) == relation::future;
               }});
  return s;
}

inline command_result run_selfcheck(const sweep_config& c, std::ostream& log) {
  command_result r;
  r.report.columns = {"module", "check", "result"};
  int pass = 0, fail = 0;
  for (const auto& ch : selfcheck_suite(c)) {
    bool ok = false;
    std::string note;
    try {
      ok = ch.run();
    } catch (const std::exception& e) {
      note = std::string(" (") + e.what() + ")";
    }
    (ok ? pass : fail)++;
    r.report.add({ch.module, ch.name, std::string(ok ? "pass" : "fail")});
    log << (ok ? "PASS " : "FAIL ") << ch.module << "/" << ch.name << note << '\n';
  }
  log << "selfcheck: " << pass << " passed, " << fail << " failed\n";
  if (fail) r.status = exit_status::invariant;
  return r;
}

// ---- harmonics-table ----

inline command_result run_harmonics_table(const sweep_config& c) {
  spherical_point pt{c.d, {}, 0.3};
  if (c.point.empty()) {
    for (int i = 0; i < c.d - 2; ++i) pt.theta.push_back(0.7 + 0.2 * i);
  } else {
    if (static_cast<int>(c.point.size()) != c.d - 1) throw config_error("--point needs d-1 angles: theta_{d-1},...,theta_2,phi");
    pt.theta.assign(c.point.begin(), c.point.end() - 1);
    pt.phi = c.point.back();
  }
  auto idx = harmonic_indices_upto(c.d, c.l_max);
  auto gram = harmonic_gram(c.d, idx, c.quadrature_order);
  command_result r;
  r.report.columns = {"l", "levels", "m", "norm_const", "Y_re", "Y_im", "chi_minus", "chi_plus", "delta_minus", "delta_plus",
                      "quadrature_norm"};
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const auto& L = idx[i];
    int sub = L.levels.size() > 1 ? L.levels[1] : std::abs(L.m);
    auto lad = ladder_coeffs(c.d, L.l(), sub);
    auto y = eval_harmonic(c.d, L, pt);
    double qn = gram(i, i).real();
    double off = 0.0;
    for (Eigen::Index j = 0; j < gram.cols(); ++j)
      if (j != static_cast<Eigen::Index>(i)) off = std::max(off, std::abs(gram(i, j)));
    if (std::abs(qn - 1.0) > 1e-8 || off > 1e-8) r.status = exit_status::invariant;
    r.report.add({static_cast<long long>(L.l()), levels_text(L), static_cast<long long>(L.m), norm_const(c.d, L), y.real(),
                  y.imag(), lad.chi_minus, lad.chi_plus, lad.delta_minus, lad.delta_plus, qn});
  }
  return r;
}

// ---- jfactor-audit ----

inline j_factors audit_source(const sweep_config& c) {
  if (!c.input.empty()) return j_factors_from_json(read_json_file(c.input));
  auto grid = symmetric_grid(parse_omega_list(c.omega));
  if (c.preset == "diagonal") {
    try {
      return diagonal_jfactors(grid, c.l_max);
    } catch (const domain_error& e) {
      throw config_error(std::string(e.what()) + "; choose an omega grid without 0");
    }
  }
  if (c.preset == "candidate") {
    auto p = make_ads_params(c.d, c.Delta, c.R);
    j_factors jf;
    for (const auto& n : grid)
      for (int l = 0; l <= c.l_max; ++l) jf.set(n.omega, l, complete_nondiagonal(candidate_jab(c.candidates.front(), p, n.omega, l).real()));
    return jf;
  }
  throw config_error("preset must be diagonal or candidate");
}

inline command_result run_jfactor_audit(const sweep_config& c, std::ostream& log) {
  auto rep = check_conditions(audit_source(c));
  command_result r;
  r.report.columns = {"omega", "l", "case", "reality_ok", "square_ok", "compat_ok", "offdiag_ok", "real_products_ok",
                      "positivity_ok", "max_residual"};
  for (const auto& row : rep.rows) {
    const auto& q = row.report;
    double mx = 0.0;
    for (const auto& [name, v] : q.residuals) mx = std::max(mx, v);
    r.report.add({row.omega, static_cast<long long>(row.l), std::string(to_string(q.kase)), q.reality_ok, q.square_ok, q.compat_ok,
                  q.offdiag_ok, q.real_products_ok, q.positivity_ok, mx});
  }
  log << "jfactor-audit: case " << to_string(rep.kase) << ", essential conditions " << (rep.essential_ok() ? "hold" : "FAIL")
      << ", positivity " << (rep.positivity_ok ? "holds" : "fails") << '\n';
  if (!rep.essential_ok()) r.status = exit_status::invariant;
  return r;
}

// ---- candidate-sweep ----

inline command_result run_candidate_sweep(const sweep_config& c, std::ostream& log) {
  auto p = make_ads_params(c.d, c.Delta, c.R);
  auto grid = symmetric_grid(parse_omega_list(c.omega));
  command_result r;
  r.report.columns = {"omega", "l", "candidate", "jab", "sign", "boost_res_minus", "boost_res_plus", "status"};
  int poles = 0, bad = 0;
  double worst_res = 0.0;
  for (const auto& n : grid)
    for (int l = 0; l <= c.l_max; ++l)
      for (int k : c.candidates) {
        auto f = [&](double w, int ll) { return candidate_jab(k, p, w, ll); };
        double nan = std::nan("");
        double v = nan, rm = nan, rp = nan;
        std::string status = "ok";
        try {
          v = f(n.omega, l).real();
          auto res = boost_recurrence_residual(p, f, n.omega, l);
          double sc = std::max({std::abs(v), std::abs(f(n.omega - 1, l + 1)), std::abs(f(n.omega + 1, l + 1))});
          rm = sc > 0 ? res.res_minus / sc : res.res_minus;
          rp = sc > 0 ? res.res_plus / sc : res.res_plus;
          worst_res = std::max({worst_res, rm, rp});
          if (std::max(rm, rp) > c.tolerance) status = "residual", ++bad;
        } catch (const pole_error&) {
          status = std::isnan(v) ? "pole" : "pole_neighbour";
          ++poles;
        } catch (const overflow_error&) {
          status = "overflow";
          ++poles;
        }
        long long sign = std::isnan(v) ? 0 : (v > 0) - (v < 0);
        r.report.add({n.omega, static_cast<long long>(l), static_cast<long long>(k), v, sign, rm, rp, status});
      }
  log << "candidate-sweep: " << r.report.rows.size() << " rows, worst relative boost residual " << format_double(worst_res) << ", "
      << bad << " above tolerance, " << poles << " at poles\n";
  if (bad) r.status = exit_status::invariant;
  if (poles) r.status = exit_status::numeric;
  return r;
}

// ---- flux-classify ----

inline command_result run_flux_classify(const sweep_config& c, std::ostream& log) {
  command_result r;
  r.report.columns = {"spacetime", "mode", "omega", "l", "levels", "m", "radius", "flux_per_time", "expected", "verdict"};
  int mismatched = 0;
  auto expect_dir = [](double e) { return e > 0 ? direction::outgoing : e < 0 ? direction::incoming : direction::standing; };
  auto add = [&](const std::string& st, const std::string& mode, double w, int l, const std::string& lv, long long m, double rad,
                 const direction_verdict& v, double expected) {
    if (!std::isnan(expected) && v.verdict != expect_dir(expected)) ++mismatched;
    r.report.add({st, mode, w, static_cast<long long>(l), lv, m, rad, v.flux_per_time, expected, std::string(to_string(v.verdict))});
  };

  if (c.spacetime == "minkowski") {
    if (c.d != 3) throw config_error("Minkowski flux modes are implemented for d = 3");
    std::string mode = c.mode.empty() ? "hankel" : c.mode;
    if (mode != "hankel" && mode != "hankel2" && mode != "standing") throw config_error("Minkowski mode must be hankel, hankel2 or standing");
    if (!(c.radius > 0.0)) throw config_error("--r must be positive");
    ads_params flat{3, 0.0, 1.0};
    for (double w : parse_omega_list(c.omega))
      for (int l = 0; l <= c.l_max; ++l) {
        double p2 = w * w - c.mass * c.mass;
        if (p2 <= 0.0) {
          // below threshold the radial profile is real
          std::complex<double> f, fp;
          if (p2 == 0.0) {
            f = std::pow(c.radius, l);
            fp = l * std::pow(c.radius, l - 1);
          } else {
            double kap = std::sqrt(-p2);
            f = radial_basis(radial_kind::j_evan, l, kap * c.radius);
            fp = kap * radial_basis_deriv(radial_kind::j_evan, l, kap * c.radius);
          }
          add("minkowski", "evanescent", w, l, "", 0, c.radius, mode_flux(spacetime::minkowski, flat, w, c.radius, f, fp), 0.0);
          continue;
        }
        double p = std::sqrt(p2);
        if (mode == "standing") {
          auto f = radial_basis(radial_kind::j, l, p * c.radius), fp = p * radial_basis_deriv(radial_kind::j, l, p * c.radius);
          add("minkowski", mode, w, l, "", 0, c.radius, mode_flux(spacetime::minkowski, flat, w, c.radius, f, fp), 0.0);
        } else {
          auto kind = mode == "hankel" ? radial_kind::h1 : radial_kind::h2;
          add("minkowski", mode, w, l, "", 0, c.radius, minkowski_hankel_flux(w, c.mass, l, c.radius, kind),
              (mode == "hankel" ? 2.0 : -2.0) * w / p);
        }
      }
  } else if (c.spacetime == "ads") {
    auto p = make_ads_params(c.d, c.Delta, c.R);
    if (!c.input.empty()) {
      auto v = mode_vector_from_json(read_json_file(c.input), c.d);
      if (v.d() != c.d) throw config_error("mode vector dimension does not match --d");
      for (const auto& [k, co] : v.entries()) {
        int l = k.L.l();
        auto f = co.a * radial_eval(p, k.omega, l, channel::a, c.rho) + co.b * radial_eval(p, k.omega, l, channel::b, c.rho);
        auto fp = co.a * radial_deriv(p, k.omega, l, channel::a, c.rho) + co.b * radial_deriv(p, k.omega, l, channel::b, c.rho);
        add("ads", "input", k.omega, l, levels_text(k.L), k.L.m, c.rho, mode_flux(spacetime::ads, p, k.omega, c.rho, f, fp),
            std::nan(""));
      }
    } else {
      std::string mode = c.mode.empty() ? "combined" : c.mode;
      if (mode != "combined" && mode != "standing") throw config_error("AdS mode must be combined or standing");
      for (double w : parse_omega_list(c.omega))
        for (int l = 0; l <= c.l_max; ++l) {
          if (mode == "standing") {
            double f = radial_eval(p, w, l, channel::a, c.rho), fp = radial_deriv(p, w, l, channel::a, c.rho);
            add("ads", mode, w, l, "", 0, c.rho, mode_flux(spacetime::ads, p, w, c.rho, f, fp), 0.0);
          } else {
            auto [f, fp] = ads_combined_radial(p, w, l, c.rho, c.pflat);
            add("ads", mode, w, l, "", 0, c.rho, mode_flux(spacetime::ads, p, w, c.rho, f, fp),
                4.0 * w * std::pow(c.R, c.d - 1) / c.pflat);
          }
        }
    }
  } else {
    throw config_error("spacetime must be minkowski or ads");
  }
  log << "flux-classify: " << r.report.rows.size() << " modes, " << mismatched << " with an unexpected direction\n";
  if (mismatched) r.status = exit_status::invariant;
  return r;
}

}  // namespace kgm::cli
