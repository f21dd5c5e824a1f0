#pragma once

// Serialization of fields, algebra elements and trajectories, plus the
// key-value simulation config format.
//
// Config schema (INI; every key optional except equation.name):
//   [equation] name, a, alpha, beta
//   [grid]     n
//   [time]     dt, t_end, output_every, integrator = rk4 | integrating_factor_rk4
//   [initial]  preset, scale, offset, variable = displayed | momentum,
//              modes = "k:re:im, k:re:im, ..."
//   [guards]   blowup, resolution

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "vir/integrate.hpp"

namespace vir {

/// {n, coefficients: [[re, im], ...]} with wavenumbers ordered -n/2 .. n/2-1.
nlohmann::json to_json(const Field& f);
Field field_from_json(const nlohmann::json& j);

/// {field: <Field>, central: <real>}
nlohmann::json to_json(const AlgebraElement& x);
nlohmann::json to_json(const Momentum& m);
AlgebraElement algebra_element_from_json(const nlohmann::json& j);
Momentum momentum_from_json(const nlohmann::json& j);

/// One row "x_j,value_j" per grid point.
void write_field_csv(std::ostream& os, const Field& f);

/// Header "t,x_0,...,x_{n-1}" then one row of momentum values per sample.
void write_snapshots_csv(std::ostream& os, const Trajectory& traj);
/// Header "t,mean,l2,hamiltonian,central" then one row per sample.
void write_conserved_csv(std::ostream& os, const Trajectory& traj);
nlohmann::json sim_config_to_json(const SimConfig& cfg);
nlohmann::json trajectory_meta(const SimConfig& cfg, const Trajectory& traj);

/// Parses the INI config text. Errors carry the offending line.
SimConfig parse_sim_config(const std::string& text, const std::string& origin = "<config>");
/// Loads a config file, or an embedded preset when `path_or_preset` names one.
SimConfig load_sim_config(const std::string& path_or_preset);

const std::vector<std::string>& config_preset_names();
/// Embedded config text for a preset such as "kdv_demo".
const std::string& config_preset_text(const std::string& name);

/// Writes snapshots.csv, conserved.csv and meta.json into dir.
void write_simulation_outputs(const std::filesystem::path& dir, const SimConfig& cfg,
                              const Trajectory& traj);

std::string format_real(double value);

}  // namespace vir
