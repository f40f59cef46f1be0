#pragma once

#include <fstream>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kgmodes/cli/commands.hpp"
#include "kgmodes/cli/config.hpp"
#include "kgmodes/cli/table.hpp"
#include "kgmodes/errors.hpp"

namespace kgm::cli {

// Returns the process exit code. Reports go to --out or `out`, diagnostics to `log`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& log) {
  sweep_config c;
  CLI::App app{"Klein-Gordon mode-space audits on Minkowski and AdS", "kgmodes"};
  app.set_config("--config", "", "flat key=value file; command line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--d", c.d, "spatial dimension");
  app.add_option("--delta", c.Delta, "AdS mass parameter Delta");
  app.add_option("--radius", c.R, "AdS curvature radius");
  app.add_option("--omega", c.omega, "frequency grid start:stop:step or comma list (mirrored to be symmetric)");
  app.add_option("--lmax", c.l_max, "largest angular momentum");
  app.add_option("--candidates", c.candidates, "candidate formulas, subset of 1..4")->delimiter(',');
  app.add_option("--format", c.format, "csv or json");
  app.add_option("--out", c.output, "report path (default stdout)");
  app.add_option("--quadrature-order", c.quadrature_order, "nodes per sphere level");
  app.add_option("--tolerance", c.tolerance, "relative tolerance for sweep residuals");
  app.add_option("--input", c.input, "JSON input (j-factor table or mode vector)");
  app.add_option("--preset", c.preset, "jfactor-audit source: diagonal or candidate");
  app.add_option("--spacetime", c.spacetime, "minkowski or ads");
  app.add_option("--mode", c.mode, "flux mode: hankel, hankel2, standing (Minkowski); combined, standing (AdS)");
  app.add_option("--mass", c.mass, "Minkowski field mass");
  app.add_option("--r", c.radius, "Minkowski hypercylinder radius");
  app.add_option("--rho", c.rho, "AdS hypercylinder coordinate rho");
  app.add_option("--pflat", c.pflat, "flat-limit momentum for the combined AdS mode");
  app.add_option("--point", c.point, "harmonics-table angles theta_{d-1},...,theta_2,phi")->delimiter(',');

  auto* selfcheck = app.add_subcommand("selfcheck", "run the invariant suite of every module");
  auto* harm = app.add_subcommand("harmonics-table", "tabulate Y values, ladder coefficients and quadrature norms");
  auto* audit = app.add_subcommand("jfactor-audit", "check the complex-structure conditions per (omega, l)");
  auto* sweep = app.add_subcommand("candidate-sweep", "candidate j-factors, boost residuals and sign landscape");
  auto* flux = app.add_subcommand("flux-classify", "radial momentum flux and direction of modes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    log << "error: " << e.what() << '\n';
    return static_cast<int>(exit_status::config);
  }

  try {
    validate(c);
    command_result res;
    if (selfcheck->parsed())
      res = run_selfcheck(c, out);
    else if (harm->parsed())
      res = run_harmonics_table(c);
    else if (audit->parsed())
      res = run_jfactor_audit(c, log);
    else if (sweep->parsed())
      res = run_candidate_sweep(c, log);
    else if (flux->parsed())
      res = run_flux_classify(c, log);

    if (!selfcheck->parsed() || !c.output.empty()) {
      std::ofstream file;
      if (!c.output.empty()) {
        file.open(c.output);
        if (!file) throw config_error("cannot write " + c.output);
      }
      std::ostream& dst = c.output.empty() ? out : file;
      if (c.format == "json")
        write_json(dst, res.report);
      else
        write_csv(dst, res.report);
    }
    return static_cast<int>(res.status);
  } catch (const error& e) {
    log << "error: " << e.what() << '\n';
    return static_cast<int>(e.status());
  }
}

}  // namespace kgm::cli
