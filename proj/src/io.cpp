#include "vir/io.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace vir {

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

nlohmann::json to_json(const Field& f) {
  const GridSpec& grid = f.grid();
  nlohmann::json coeffs = nlohmann::json::array();
  for (int k = -grid.size() / 2; k < grid.size() / 2; ++k) {
    const auto c = f.coefficient(k);
    coeffs.push_back({c.real(), c.imag()});
  }
  return {{"n", grid.size()}, {"coefficients", coeffs}};
}

Field field_from_json(const nlohmann::json& j) {
  const GridSpec grid(j.at("n").get<int>());
  const auto& list = j.at("coefficients");
  if (static_cast<int>(list.size()) != grid.size()) {
    throw std::invalid_argument("field json: expected " + std::to_string(grid.size()) + " coefficients");
  }
  Field::ComplexVector coeffs(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    const int k = i - grid.size() / 2;
    coeffs[grid.index_of(k)] = {list[i].at(0).get<double>(), list[i].at(1).get<double>()};
  }
  return Field::from_coefficients(grid, coeffs);
}

nlohmann::json to_json(const AlgebraElement& x) { return {{"field", to_json(x.u)}, {"central", x.a}}; }
nlohmann::json to_json(const Momentum& m) { return {{"field", to_json(m.m)}, {"central", m.c}}; }

AlgebraElement algebra_element_from_json(const nlohmann::json& j) {
  return {field_from_json(j.at("field")), j.at("central").get<double>()};
}

Momentum momentum_from_json(const nlohmann::json& j) {
  return {field_from_json(j.at("field")), j.at("central").get<double>()};
}

void write_field_csv(std::ostream& os, const Field& f) {
  for (int j = 0; j < f.size(); ++j) {
    os << format_real(f.grid().node(j)) << ',' << format_real(f.value(j)) << '\n';
  }
}

void write_snapshots_csv(std::ostream& os, const Trajectory& traj) {
  if (traj.snapshots.empty()) return;
  const GridSpec& grid = traj.snapshots.front().m.grid();
  os << 't';
  for (int j = 0; j < grid.size(); ++j) os << ',' << format_real(grid.node(j));
  os << '\n';
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
    os << format_real(traj.times[i]);
    for (int j = 0; j < grid.size(); ++j) os << ',' << format_real(traj.snapshots[i].m.value(j));
    os << '\n';
  }
}

void write_conserved_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,mean,l2,hamiltonian,central\n";
  for (std::size_t i = 0; i < traj.conserved.size(); ++i) {
    const auto& q = traj.conserved[i];
    os << format_real(traj.times[i]) << ',' << format_real(q.mean) << ',' << format_real(q.l2) << ','
       << (q.hamiltonian ? format_real(*q.hamiltonian) : std::string()) << ','
       << format_real(q.central) << '\n';
  }
}

nlohmann::json sim_config_to_json(const SimConfig& cfg) {
  nlohmann::json modes = nlohmann::json::array();
  for (const auto& [k, c] : cfg.initial.modes) modes.push_back({k, c.real(), c.imag()});
  return {
      {"equation",
       {{"name", std::string(to_string(cfg.equation.name))},
        {"a", cfg.equation.a},
        {"alpha", cfg.equation.alpha},
        {"beta", cfg.equation.beta}}},
      {"grid", {{"n", cfg.grid.size()}}},
      {"time",
       {{"dt", cfg.dt},
        {"t_end", cfg.t_end},
        {"output_every", cfg.output_every},
        {"integrator", to_string(cfg.integrator)}}},
      {"initial",
       {{"preset", cfg.initial.preset},
        {"scale", cfg.initial.scale},
        {"offset", cfg.initial.offset},
        {"variable", cfg.initial.is_momentum ? "momentum" : "displayed"},
        {"modes", modes}}},
      {"guards", {{"blowup", cfg.blowup_guard}, {"resolution", cfg.resolution_guard}}},
  };
}

nlohmann::json trajectory_meta(const SimConfig& cfg, const Trajectory& traj) {
  return {
      {"config", sim_config_to_json(cfg)},
      {"status", to_string(traj.status)},
      {"message", traj.message},
      {"samples", traj.times.size()},
      {"final_time", traj.times.empty() ? 0.0 : traj.times.back()},
      {"displayed_mean", traj.displayed_mean},
  };
}

namespace {

namespace pt = boost::property_tree;

/// Line number of "key =" inside [section], for error messages.
int find_line(const std::string& text, const std::string& section, const std::string& key) {
  std::istringstream in(text);
  std::string line, current;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '[') {
      const auto close = line.find(']', first);
      current = line.substr(first + 1, close - first - 1);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string k = line.substr(first, eq - first);
    k.erase(k.find_last_not_of(" \t") + 1);
    if (current == section && k == key) return number;
  }
  return 0;
}

class ConfigReader {
 public:
  ConfigReader(const pt::ptree& tree, const std::string& text, std::string origin)
      : tree_(tree), text_(text), origin_(std::move(origin)) {}

  [[noreturn]] void fail(const std::string& section, const std::string& key, const std::string& msg) const {
    const int line = find_line(text_, section, key);
    std::string where = origin_;
    if (line > 0) where += ":" + std::to_string(line);
    throw ConfigError(where + ": " + section + "." + key + ": " + msg);
  }

  template <typename T>
  T get(const std::string& section, const std::string& key, T fallback) const {
    const auto node = tree_.get_child_optional(pt::ptree::path_type(section + "." + key));
    if (!node) return fallback;
    const auto value = node->get_value_optional<T>();
    if (!value) fail(section, key, "cannot parse '" + node->data() + "'");
    return *value;
  }

  bool has(const std::string& section, const std::string& key) const {
    return static_cast<bool>(tree_.get_child_optional(pt::ptree::path_type(section + "." + key)));
  }

  void reject_unknown() const {
    static const std::map<std::string, std::set<std::string>> known = {
        {"equation", {"name", "a", "alpha", "beta"}},
        {"grid", {"n"}},
        {"time", {"dt", "t_end", "output_every", "integrator"}},
        {"initial", {"preset", "scale", "offset", "variable", "modes"}},
        {"guards", {"blowup", "resolution"}},
    };
    for (const auto& [section, child] : tree_) {
      const auto it = known.find(section);
      if (it == known.end()) {
        throw ConfigError(origin_ + ": unknown section [" + section + "]");
      }
      for (const auto& [key, value] : child) {
        if (!it->second.contains(key)) fail(section, key, "unknown key");
      }
    }
  }

 private:
  const pt::ptree& tree_;
  const std::string& text_;
  std::string origin_;
};

std::vector<std::pair<int, std::complex<double>>> parse_modes(const ConfigReader& reader,
                                                              const std::string& spec) {
  std::vector<std::pair<int, std::complex<double>>> modes;
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    int k = 0;
    double re = 0, im = 0;
    if (std::sscanf(item.c_str(), " %d : %lf : %lf", &k, &re, &im) != 3) {
      reader.fail("initial", "modes", "expected k:re:im, got '" + item + "'");
    }
    modes.emplace_back(k, std::complex<double>(re, im));
  }
  return modes;
}

const std::map<std::string, std::string>& preset_configs() {
  static const std::map<std::string, std::string> presets = {
      {"burgers_demo",
       "[equation]\nname = burgers\n[grid]\nn = 256\n[time]\ndt = 1e-3\nt_end = 0.8\n"
       "output_every = 50\nintegrator = rk4\n[initial]\npreset = sin\nscale = 0.5\n"},
      {"kdv_demo",
       "[equation]\nname = kdv\na = 1\n[grid]\nn = 128\n[time]\ndt = 1e-3\nt_end = 1\n"
       "output_every = 100\n[initial]\npreset = sin\n"},
      {"mkdv_demo",
       "[equation]\nname = mkdv\na = 1\n[grid]\nn = 128\n[time]\ndt = 1e-3\nt_end = 1\n"
       "output_every = 100\n[initial]\npreset = sin\nscale = 0.5\n"},
      {"generalized_kdv_demo",
       "[equation]\nname = generalized_kdv\na = 1\nalpha = 1\nbeta = 3\n[grid]\nn = 128\n"
       "[time]\ndt = 1e-3\nt_end = 0.5\noutput_every = 50\n[initial]\npreset = sin\noffset = 1\n"},
      {"camassa_holm_demo",
       "[equation]\nname = camassa_holm\na = 1\n[grid]\nn = 128\n[time]\ndt = 1e-3\nt_end = 1\n"
       "output_every = 100\n[initial]\npreset = sin\nscale = 0.5\n"},
      {"hunter_saxton_demo",
       "[equation]\nname = hunter_saxton\na = 1\n[grid]\nn = 128\n[time]\ndt = 1e-3\nt_end = 0.5\n"
       "output_every = 50\n[initial]\npreset = sin\nscale = 0.5\n"},
      {"generalized_hs_new_demo",
       "[equation]\nname = generalized_hs_new\na = 1\nalpha = 1\nbeta = 1\n[grid]\nn = 128\n"
       "[time]\ndt = 1e-3\nt_end = 0.5\noutput_every = 50\n[initial]\npreset = sin\nscale = 0.5\n"},
      {"generalized_h1_demo",
       "[equation]\nname = generalized_h1\na = 1\nalpha = 1\nbeta = 1\n[grid]\nn = 128\n"
       "[time]\ndt = 1e-3\nt_end = 0.5\noutput_every = 50\n[initial]\npreset = sin\nscale = 0.5\n"},
  };
  return presets;
}

}  // namespace

SimConfig parse_sim_config(const std::string& text, const std::string& origin) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(origin + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  const ConfigReader reader(tree, text, origin);
  reader.reject_unknown();

  SimConfig cfg;
  const auto name_text = reader.get<std::string>("equation", "name", "");
  if (name_text.empty()) throw ConfigError(origin + ": equation.name is required");
  const auto name = parse_equation_name(name_text);
  if (!name) reader.fail("equation", "name", "unknown equation '" + name_text + "'");
  cfg.equation.name = *name;
  cfg.equation.a = reader.get("equation", "a", 0.0);
  cfg.equation.alpha = reader.get("equation", "alpha", 1.0);
  cfg.equation.beta = reader.get("equation", "beta", 0.0);

  const int n = reader.get("grid", "n", 128);
  try {
    cfg.grid = GridSpec(n);
  } catch (const std::invalid_argument& e) {
    reader.fail("grid", "n", e.what());
  }

  cfg.dt = reader.get("time", "dt", cfg.dt);
  cfg.t_end = reader.get("time", "t_end", cfg.t_end);
  cfg.output_every = reader.get("time", "output_every", cfg.output_every);
  const auto integrator = reader.get<std::string>("time", "integrator", "integrating_factor_rk4");
  if (integrator == "rk4") {
    cfg.integrator = Integrator::Rk4;
  } else if (integrator == "integrating_factor_rk4") {
    cfg.integrator = Integrator::IntegratingFactorRk4;
  } else {
    reader.fail("time", "integrator", "expected rk4 or integrating_factor_rk4");
  }

  cfg.initial.preset = reader.get<std::string>("initial", "preset", "sin");
  cfg.initial.scale = reader.get("initial", "scale", 1.0);
  cfg.initial.offset = reader.get("initial", "offset", 0.0);
  const auto variable = reader.get<std::string>("initial", "variable", "displayed");
  if (variable != "displayed" && variable != "momentum") {
    reader.fail("initial", "variable", "expected displayed or momentum");
  }
  cfg.initial.is_momentum = variable == "momentum";
  if (reader.has("initial", "modes")) {
    cfg.initial.modes = parse_modes(reader, reader.get<std::string>("initial", "modes", ""));
  }
  try {
    (void)make_initial_field(cfg.initial, cfg.grid);
  } catch (const ConfigError& e) {
    reader.fail("initial", cfg.initial.modes.empty() ? "preset" : "modes", e.what());
  }

  cfg.blowup_guard = reader.get("guards", "blowup", cfg.blowup_guard);
  cfg.resolution_guard = reader.get("guards", "resolution", cfg.resolution_guard);

  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return cfg;
}

const std::vector<std::string>& config_preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, text] : preset_configs()) out.push_back(name);
    return out;
  }();
  return names;
}

const std::string& config_preset_text(const std::string& name) {
  const auto it = preset_configs().find(name);
  if (it == preset_configs().end()) throw ConfigError("unknown config preset '" + name + "'");
  return it->second;
}

SimConfig load_sim_config(const std::string& path_or_preset) {
  if (std::filesystem::is_regular_file(path_or_preset)) {
    std::ifstream in(path_or_preset);
    if (!in) throw ConfigError("cannot open " + path_or_preset);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_sim_config(text.str(), path_or_preset);
  }
  if (preset_configs().contains(path_or_preset)) {
    return parse_sim_config(config_preset_text(path_or_preset), path_or_preset);
  }
  throw ConfigError("no config file or preset named '" + path_or_preset + "'");
}

void write_simulation_outputs(const std::filesystem::path& dir, const SimConfig& cfg,
                              const Trajectory& traj) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream os(dir / "snapshots.csv");
    write_snapshots_csv(os, traj);
  }
  {
    std::ofstream os(dir / "conserved.csv");
    write_conserved_csv(os, traj);
  }
  std::ofstream os(dir / "meta.json");
  os << trajectory_meta(cfg, traj).dump(2) << '\n';
}

}  // namespace vir
