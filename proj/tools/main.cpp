#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spindyn/common.hpp"
#include "spindyn/run_config.hpp"
#include "spindyn/runner.hpp"

namespace {

using spindyn::RunConfig;

void execute(RunConfig config) {
  const spindyn::RunManifest manifest = spindyn::run(config);
  std::cout << manifest.summary << "\n";
  std::cout << "manifest -> " << manifest.manifest_path << "\n";
}

// Shared shape of the config-file subcommands: positional config path plus
// overrides applied after loading.
struct FileModeArgs {
  std::string config_path;
  std::string out;
  bool raman = false;
  bool no_cross_term = false;
};

void add_file_mode(CLI::App& app, const std::string& name,
                   const std::string& description, FileModeArgs& args,
                   bool with_raman_flag, bool with_cross_flag) {
  CLI::App* sub = app.add_subcommand(name, description);
  sub->add_option("config", args.config_path, "run config file")->required();
  sub->add_option("--out", args.out, "primary output path override");
  if (with_raman_flag) {
    sub->add_flag("--raman", args.raman,
                  "integrate the coupled two-component system and emit both "
                  "fields");
  }
  if (with_cross_flag) {
    sub->add_flag("--no-cross-term", args.no_cross_term,
                  "diagnostic: disable the cross-curvature coupling");
  }
  sub->callback([&args, name] {
    RunConfig config = spindyn::load_config(args.config_path);
    config.mode = name;  // the subcommand decides the pipeline
    if (!args.out.empty()) config.out = args.out;
    if (args.raman) config.raman_enabled = true;
    if (args.no_cross_term) config.raman_cross_term = false;
    execute(std::move(config));
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spin-chain dynamics toolkit: symbolic checks, field-tensor "
               "duality, exact and semiclassical evolution, ring-down "
               "spectroscopy"};
  app.set_version_flag("--version", spindyn::kVersion);
  app.require_subcommand(1);

  // verify-algebra ----------------------------------------------------------
  RunConfig verify;
  verify.mode = "verify-algebra";
  verify.chain.sites = 4;
  verify.chain.omega0 = 1.0;
  verify.chain.omega = 0.8;
  verify.chain.rabi = 0.5;
  verify.chain.exchange = 0.25;
  {
    CLI::App* sub = app.add_subcommand(
        "verify-algebra",
        "check the equation-of-motion engine against the reference forms");
    sub->add_option("--sites", verify.chain.sites, "chain length N")
        ->capture_default_str();
    sub->add_option("--site", verify.verify_site, "interior site k")
        ->capture_default_str();
    sub->add_option("--component", verify.verify_component,
                    "z | plus | minus | all")
        ->capture_default_str();
    sub->add_option("--form", verify.verify_form,
                    "reference form: component | determinant")
        ->capture_default_str();
    sub->add_option("--omega0", verify.chain.omega0, "level splitting")
        ->capture_default_str();
    sub->add_option("--omega", verify.chain.omega, "drive frequency")
        ->capture_default_str();
    sub->add_option("--rabi", verify.chain.rabi, "drive coupling")
        ->capture_default_str();
    sub->add_option("--exchange", verify.chain.exchange, "exchange constant")
        ->capture_default_str();
    sub->add_option("--emit", verify.emit, "stdout format: text | json")
        ->capture_default_str();
    sub->add_option("--out", verify.out, "report path (default derivation_report.json)");
    sub->callback([&verify] { execute(verify); });
  }

  // duality -----------------------------------------------------------------
  RunConfig duality;
  duality.mode = "duality";
  {
    CLI::App* sub = app.add_subcommand(
        "duality", "field-tensor assembly, duality rotation and invariants");
    sub->add_option("--efield", duality.duality_e, "electric vector x,y,z")
        ->delimiter(',')
        ->required();
    sub->add_option("--hfield", duality.duality_h, "magnetic vector x,y,z")
        ->delimiter(',')
        ->required();
    sub->add_option("--emit", duality.emit, "stdout format: text | json")
        ->capture_default_str();
    sub->add_option("--out", duality.out, "report path (default duality.json)");
    sub->callback([&duality] { execute(duality); });
  }

  // config-file modes -------------------------------------------------------
  FileModeArgs exact_args, lattice_args, continuum_args, raman_args, sweep_args;
  add_file_mode(app, "exact", "dense quantum evolution of the driven chain",
                exact_args, false, false);
  add_file_mode(app, "lattice", "site-resolved precession dynamics",
                lattice_args, true, true);
  add_file_mode(app, "continuum", "continuum-limit precession dynamics",
                continuum_args, true, true);
  add_file_mode(app, "raman-compare",
                "splitting-constant comparison: two-component vs single",
                raman_args, false, true);
  add_file_mode(app, "sweep",
                "ring-down measurement across exchange or length values",
                sweep_args, false, false);

  // spectrum ----------------------------------------------------------------
  RunConfig spectrum;
  spectrum.mode = "spectrum";
  {
    CLI::App* sub = app.add_subcommand(
        "spectrum", "transform a trajectory into a ring-down spectrum");
    sub->add_option("--in", spectrum.in, "input trajectory CSV")->required();
    sub->add_option("--out", spectrum.out, "spectrum CSV (default spectrum.csv)");
    sub->add_option("--peaks-out", spectrum.peaks_out,
                    "peak/fit report (default peaks.json)");
    sub->add_option("--min-prominence", spectrum.spectrum_min_prominence,
                    "peak threshold as a fraction of the maximum")
        ->capture_default_str();
    sub->callback([&spectrum] { execute(spectrum); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage problems are config errors
  } catch (const spindyn::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const spindyn::GuardError& e) {
    std::cerr << "guard error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "pipeline error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
