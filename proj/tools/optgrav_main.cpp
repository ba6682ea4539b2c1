// optgrav command line tool: gravitational phase evaluation, one-shot
// sensitivities, declarative parameter sweeps and crossover searches over
// the closed-form and simulated engines. Sweep output is CSV.
//
// Exit codes: 0 success, 2 validation/usage error, 1 runtime error.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <stdexcept>
#include <string>

#include "optgrav/closed_form.hpp"
#include "optgrav/geometry.hpp"
#include "optgrav/interferometer.hpp"
#include "optgrav/sweep.hpp"

namespace {

struct GeometryFlags {
  double H = 50.0;
  double L = 1000.0;
  double omega = 2.82e14;
  double c = optgrav::constants::speed_of_light_rounded;
  double R2 = optgrav::constants::earth_radius;
  double g = 9.8;
  double r_s = 0.0;  // 0 means "derive from g"

  void attach(CLI::App* app) {
    app->add_option("--H", H, "vertical arm proper height, m");
    app->add_option("--L", L, "horizontal arm proper length, m");
    app->add_option("--omega", omega, "optical frequency, Hz");
    app->add_option("--c", c, "speed of light, m/s");
    app->add_option("--R2", R2, "ground radial coordinate, m");
    app->add_option("--g", g, "surface gravity, m/s^2 (ignored if --r-s given)");
    app->add_option("--r-s", r_s, "Schwarzschild radius, m (overrides --g)");
  }

  optgrav::GeometryConfig build() const {
    if (r_s > 0.0) {
      optgrav::GeometryConfig cfg;
      cfg.r_s = r_s;
      cfg.R2 = R2;
      cfg.H = H;
      cfg.L = L;
      cfg.omega = omega;
      cfg.c = c;
      cfg.validate();
      return cfg;
    }
    return optgrav::GeometryConfig::from_surface_gravity(g, H, L, omega, c, R2);
  }
};

struct ParamFlags {
  optgrav::SchemeParams p;

  void attach(CLI::App* app) {
    app->add_option("--n-sig", p.n_sig, "signal photon number");
    app->add_option("--T", p.T, "MZ beamsplitter intensity transmittance");
    app->add_option("--r", p.r, "MZ input squeeze parameter");
    app->add_option("--r1", p.r1, "SU(1,1) first gain parameter");
    app->add_option("--r2", p.r2, "SU(1,1) second gain parameter");
    app->add_option("--t1", p.t1, "internal amplitude transmittance");
    app->add_option("--t2", p.t2, "external amplitude transmittance");
  }
};

void cmd_phase(const GeometryFlags& gf) {
  const optgrav::GeometryConfig geo = gf.build();
  const optgrav::PathTimes pt = optgrav::path_times(geo);
  std::printf("r_s_m           = %s\n", optgrav::format_sci(geo.r_s).c_str());
  std::printf("local_g_m_s2    = %s\n",
              optgrav::format_sci(optgrav::local_g(geo.r_s, geo.R2, geo.c)).c_str());
  std::printf("tau_signal_s    = %s\n", optgrav::format_sci(pt.tau_signal).c_str());
  std::printf("tau_reference_s = %s\n", optgrav::format_sci(pt.tau_reference).c_str());
  std::printf("delta_tau_s     = %s\n", optgrav::format_sci(pt.delta_tau).c_str());
  std::printf("psi_rad         = %s\n", optgrav::format_sci(pt.psi).c_str());
}

void cmd_sens(const std::string& scheme_name, const ParamFlags& pf,
              const GeometryFlags& gf) {
  optgrav::EvalPoint pt;
  pt.p = pf.p;
  pt.g = gf.build();
  const optgrav::Scheme scheme = optgrav::parse_scheme(scheme_name);
  const optgrav::SensitivityResult res = optgrav::evaluate_scheme(scheme, pt);
  std::printf("scheme   = %s\n", scheme_name.c_str());
  std::printf("method   = %s\n", res.method == optgrav::Method::Simulated
                                     ? "simulated"
                                     : "closed_form");
  std::printf("n_sig    = %s\n", optgrav::format_sci(res.n_sig).c_str());
  std::printf("dg_over_g = %s\n", optgrav::format_sci(res.value).c_str());
}

void cmd_sweep(const std::string& preset, const std::string& spec_path,
               const std::string& out_path) {
  optgrav::SweepSpec spec;
  if (!preset.empty()) {
    spec = optgrav::make_preset(preset);
  } else if (!spec_path.empty()) {
    spec = optgrav::parse_sweep_spec_file(spec_path);
  } else {
    throw std::invalid_argument("sweep: give --preset or --spec");
  }
  const optgrav::SweepTable table = optgrav::run_sweep(spec);
  if (out_path.empty()) {
    optgrav::emit_csv(table, std::cout);
  } else {
    optgrav::emit_csv(table, out_path);
  }
}

void cmd_crossover(const std::string& scheme_a, const std::string& scheme_b,
                   const std::string& swept, double lo, double hi,
                   const ParamFlags& pf, const GeometryFlags& gf) {
  optgrav::EvalPoint pt;
  pt.p = pf.p;
  pt.g = gf.build();
  const optgrav::CrossoverResult res = optgrav::find_crossover(
      optgrav::parse_scheme(scheme_a), optgrav::parse_scheme(scheme_b), swept,
      pt, lo, hi);
  std::printf("crossover_%s = %.6f\n", swept.c_str(), res.swept);
  std::printf("better_below = %s\n", res.better_below.c_str());
  std::printf("better_above = %s\n", res.better_above.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optical gravimetry sensitivity toolkit"};
  app.require_subcommand(1);

  // phase
  auto* phase = app.add_subcommand("phase", "print the gravitationally induced phase for a geometry");
  GeometryFlags phase_geo;
  phase_geo.attach(phase);

  // sens
  auto* sens = app.add_subcommand("sens", "one-shot sensitivity evaluation");
  std::string sens_scheme;
  sens->add_option("--scheme", sens_scheme,
                   "sql | mz_squeezed | su11_single | su11_joint | "
                   "effective_sql, optionally prefixed simulated:")
      ->required();
  ParamFlags sens_params;
  sens_params.attach(sens);
  GeometryFlags sens_geo;
  sens_geo.attach(sens);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "evaluate a parameter sweep, emit CSV");
  std::string preset, spec_path, out_path;
  sweep->add_option("--preset", preset, "fig3 | fig4 | fig5a | fig5b");
  sweep->add_option("--spec", spec_path, "sweep spec file");
  sweep->add_option("--out", out_path, "output CSV path (default stdout)");

  // crossover
  auto* crossover = app.add_subcommand("crossover", "locate where two schemes exchange rank");
  std::string xa, xb, xswept;
  double xlo = 0.0, xhi = 1.0;
  crossover->add_option("--scheme-a", xa, "first scheme")->required();
  crossover->add_option("--scheme-b", xb, "second scheme")->required();
  crossover->add_option("--swept", xswept, "swept parameter name")->required();
  crossover->add_option("--min", xlo, "bracket lower end")->required();
  crossover->add_option("--max", xhi, "bracket upper end")->required();
  ParamFlags cross_params;
  cross_params.attach(crossover);
  GeometryFlags cross_geo;
  cross_geo.attach(crossover);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (phase->parsed()) cmd_phase(phase_geo);
    if (sens->parsed()) cmd_sens(sens_scheme, sens_params, sens_geo);
    if (sweep->parsed()) cmd_sweep(preset, spec_path, out_path);
    if (crossover->parsed())
      cmd_crossover(xa, xb, xswept, xlo, xhi, cross_params, cross_geo);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
