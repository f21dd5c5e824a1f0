// vir: simulations and invariant checks for Euler-Arnold equations on the
// generalized Bott-Virasoro group.
//
//   vir simulate --config kdv_demo --out run/
//   vir verify-algebra --trials 50 --seed 7
//   vir verify cocycles --trials 20
//   vir list-equations
//
// Exit status: 0 success, 1 a check failed, 2 bad arguments or config.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"

#include "vir/io.hpp"
#include "vir/verify.hpp"

namespace {

using SuiteFn = vir::VerifyReport (*)(const vir::VerifyOptions&);

const std::map<std::string, SuiteFn>& suites() {
  static const std::map<std::string, SuiteFn> table = {
      {"algebra", vir::verify_algebra},   {"hamiltonian", vir::verify_hamiltonian},
      {"cocycles", vir::verify_cocycles}, {"geodesic", vir::verify_geodesic},
      {"shifts", vir::verify_shifts},
  };
  return table;
}

int emit_report(const vir::VerifyReport& report, const std::string& out_dir) {
  const std::string text = to_json(report).dump(2);
  std::cout << text << '\n';
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream(std::filesystem::path(out_dir) / "report.json") << text << '\n';
  }
  return report.pass() ? 0 : 1;
}

void list_equations() {
  std::printf("%-20s %-14s %-8s %-8s\n", "name", "inertia", "alpha", "beta");
  for (vir::EquationName name : vir::kAllEquations) {
    const std::string label(vir::to_string(name));
    if (!vir::is_euler_equation(name)) {
      std::printf("%-20s %-14s %-8s %-8s\n", label.c_str(), "-", "1", "0");
      continue;
    }
    const vir::NamedEquation eq{name};
    const std::string inertia = vir::to_string(vir::inertia_of(name));
    const bool general = name == vir::EquationName::GeneralizedKdv ||
                         name == vir::EquationName::GeneralizedHsNew ||
                         name == vir::EquationName::GeneralizedH1;
    const auto p = vir::cocycle_of(eq);
    const std::string alpha = general ? "alpha" : vir::format_real(p.alpha);
    const std::string beta = general ? "beta" : vir::format_real(p.beta);
    std::printf("%-20s %-14s %-8s %-8s\n", label.c_str(), inertia.c_str(), alpha.c_str(), beta.c_str());
  }
}

int simulate(const std::string& config, const std::string& out_dir) {
  const vir::SimConfig cfg = vir::load_sim_config(config);
  const vir::Trajectory traj = vir::simulate(cfg);
  vir::write_simulation_outputs(out_dir, cfg, traj);
  std::printf("%s: %s at t=%s, %zu samples written to %s\n", std::string(vir::to_string(cfg.equation.name)).c_str(),
              vir::to_string(traj.status).c_str(), vir::format_real(traj.times.back()).c_str(),
              traj.times.size(), out_dir.c_str());
  return 0;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Euler-Arnold equations on the generalized Bott-Virasoro group"};
  app.require_subcommand(1, 1);

  std::string config, out_dir = ".";
  auto* sim = app.add_subcommand("simulate", "Integrate a named equation from a config file or preset");
  sim->add_option("--config", config, "INI config path or embedded preset name")->required();
  sim->add_option("--out", out_dir, "Output directory for snapshots.csv, conserved.csv, meta.json");

  vir::VerifyOptions opts;
  std::string report_dir;
  auto add_verify_flags = [&](CLI::App* cmd) {
    cmd->add_option("--trials", opts.trials, "Number of randomized trials");
    cmd->add_option("--seed", opts.seed, "RNG seed");
    cmd->add_option("--tolerance", opts.tolerance, "Override every upper-bound tolerance");
    cmd->add_option("--out", report_dir, "Also write report.json into this directory");
  };

  std::map<CLI::App*, std::string> verify_cmds;
  for (const auto& [suite, fn] : suites()) {
    auto* cmd = app.add_subcommand("verify-" + suite, "Run the " + suite + " invariant suite");
    add_verify_flags(cmd);
    if (suite == "geodesic") cmd->add_option("--field", opts.field, "Initial-condition preset used as X");
    verify_cmds[cmd] = suite;
  }
  std::string suite_name;
  auto* verify = app.add_subcommand("verify", "Run a suite by name");
  verify->add_option("suite", suite_name, "algebra | hamiltonian | cocycles | geodesic | shifts")->required();
  verify->add_option("--field", opts.field, "Initial-condition preset used as X (geodesic)");
  add_verify_flags(verify);

  auto* list = app.add_subcommand("list-equations", "Print the named equations and their signatures");
  auto* presets = app.add_subcommand("list-presets", "Print embedded config and initial-condition presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sim->parsed()) return simulate(config, out_dir);
    if (list->parsed()) {
      list_equations();
      return 0;
    }
    if (presets->parsed()) {
      for (const auto& name : vir::config_preset_names()) std::printf("config  %s\n", name.c_str());
      for (const auto& name : vir::initial_presets()) std::printf("initial %s\n", name.c_str());
      return 0;
    }
    if (verify->parsed()) {
      const auto it = suites().find(suite_name);
      if (it == suites().end()) {
        std::fprintf(stderr, "unknown suite '%s'\n", suite_name.c_str());
        return 2;
      }
      return emit_report(it->second(opts), report_dir);
    }
    for (const auto& [cmd, suite] : verify_cmds) {
      if (cmd->parsed()) return emit_report(suites().at(suite)(opts), report_dir);
    }
  } catch (const vir::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}

int main(int argc, char** argv) { return run(argc, argv); }
