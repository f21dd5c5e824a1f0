#include "vir/integrate.hpp"

#include <cmath>
#include <map>

namespace vir {

std::string to_string(Integrator integrator) {
  switch (integrator) {
    case Integrator::Rk4: return "rk4";
    case Integrator::IntegratingFactorRk4: return "integrating_factor_rk4";
  }
  return "?";
}

std::string to_string(TerminationStatus status) {
  switch (status) {
    case TerminationStatus::Completed: return "completed";
    case TerminationStatus::Blowup: return "blowup";
    case TerminationStatus::KernelObstruction: return "kernel_obstruction";
  }
  return "?";
}

namespace {

using PresetFn = double (*)(double);

const std::map<std::string, PresetFn>& preset_table() {
  static const std::map<std::string, PresetFn> table = {
      {"zero", [](double) { return 0.0; }},
      {"one", [](double) { return 1.0; }},
      {"sin", [](double x) { return std::sin(x); }},
      {"cos", [](double x) { return std::cos(x); }},
      {"sin2", [](double x) { return std::sin(2 * x); }},
      {"sin_cos2", [](double x) { return std::sin(x) + 0.5 * std::cos(2 * x); }},
      {"bump", [](double x) { return std::exp(std::cos(x) - 1); }},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& initial_presets() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : preset_table()) out.push_back(name);
    return out;
  }();
  return names;
}

Field make_initial_field(const InitialCondition& init, const GridSpec& grid) {
  Field base = Field::zero(grid);
  if (!init.preset.empty() && init.preset != "none") {
    const auto it = preset_table().find(init.preset);
    if (it == preset_table().end()) throw ConfigError("unknown initial preset '" + init.preset + "'");
    base = Field::sample(grid, it->second);
  }
  Field out = init.scale * base + init.offset;
  if (!init.modes.empty()) {
    Field::ComplexVector coeffs = Field::ComplexVector::Zero(grid.size());
    for (const auto& [k, c] : init.modes) {
      if (k < 0 || k > grid.size() / 2 - 1) {
        throw ConfigError("initial mode k=" + std::to_string(k) + " outside [0, n/2)");
      }
      if (k == 0) {
        coeffs[0] += c.real();
      } else {
        coeffs[grid.index_of(k)] += c;
        coeffs[grid.index_of(-k)] += std::conj(c);
      }
    }
    out = out + Field::from_coefficients(grid, coeffs);
  }
  return out;
}

void SimConfig::validate() const {
  if (!(dt > 0)) throw ConfigError("dt must be positive");
  if (!(t_end > 0)) throw ConfigError("t_end must be positive");
  if (dt > t_end) throw ConfigError("dt must not exceed t_end");
  if (output_every < 1) throw ConfigError("output_every must be a positive integer");
  if (!(blowup_guard > 0)) throw ConfigError("blowup_guard must be positive");
  if (resolution_guard < 0) throw ConfigError("resolution_guard must be non-negative");
}

namespace {

bool exceeds_guards(const SimConfig& cfg, const Field& u) {
  if (!u.values().allFinite()) return true;
  if (sup_norm(u) > cfg.blowup_guard) return true;
  if (cfg.resolution_guard > 0 &&
      tail_fraction(u, cfg.grid.dealias_cutoff() / 2) > cfg.resolution_guard) {
    return true;
  }
  return false;
}

}  // namespace

Trajectory simulate(const SimConfig& cfg) {
  cfg.validate();
  return simulate(cfg, make_initial_field(cfg.initial, cfg.grid));
}

Trajectory simulate(const SimConfig& cfg, const Field& initial) {
  cfg.validate();
  require_same_grid(cfg.grid, initial.grid());
  const NamedEquation& eq = cfg.equation;

  Trajectory traj;
  Field u = cfg.initial.is_momentum ? initial : momentum_from_displayed(eq.name, initial);
  if (!cfg.initial.is_momentum && inertia_of(eq.name) == InertiaKind::HomogeneousH1) {
    traj.displayed_mean = initial.mean();
  }
  const double central = central_of(eq);

  auto record = [&](double t, const Field& field) {
    Momentum m{field, central};
    traj.times.push_back(t);
    traj.conserved.push_back(conserved_quantities(m, eq));
    traj.snapshots.push_back(std::move(m));
  };

  SplitSystem sys;
  try {
    sys = make_split_system<double>(eq, cfg.grid,
                                    kernel_lift_for_mean(eq.name, traj.displayed_mean));
    // Surfaces a kernel obstruction in the initial momentum before stepping.
    (void)sys.full(u);
  } catch (const KernelObstruction& e) {
    record(0, u);
    traj.status = TerminationStatus::KernelObstruction;
    traj.message = e.what();
    return traj;
  }

  record(0, u);
  const long steps = static_cast<long>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
  for (long s = 1; s <= steps; ++s) {
    const double t_prev = static_cast<double>(s - 1) * cfg.dt;
    const double t = s == steps ? cfg.t_end : static_cast<double>(s) * cfg.dt;
    const double h = t - t_prev;
    try {
      u = cfg.integrator == Integrator::Rk4
              ? step_rk4(sys.full, u, h)
              : step_integrating_factor(sys.linear, sys.nonlinear, u, h);
    } catch (const KernelObstruction& e) {
      traj.status = TerminationStatus::KernelObstruction;
      traj.message = e.what();
      return traj;
    }
    if (exceeds_guards(cfg, u)) {
      record(t, u);
      traj.status = TerminationStatus::Blowup;
      traj.message = "guard exceeded at t=" + std::to_string(t);
      return traj;
    }
    if (s % cfg.output_every == 0 || s == steps) record(t, u);
  }
  return traj;
}

Field displayed_field(const SimConfig& cfg, const Trajectory& traj, std::size_t index) {
  return displayed_from_momentum(cfg.equation.name, traj.snapshots.at(index).m,
                                 traj.displayed_mean, NullspacePolicy::Project);
}

}  // namespace vir
