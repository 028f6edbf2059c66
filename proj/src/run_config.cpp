#include "epm/run_config.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace epm {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    throw ConfigError("key '" + key + "': not a number: '" + v + "'");
  }
}

long to_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    throw ConfigError("key '" + key + "': not an integer: '" + v + "'");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw ConfigError("key '" + key + "': not a boolean: '" + v + "'");
}

std::vector<double> to_double_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::string item;
  std::istringstream is(v);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double(key, item));
  }
  if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  return out;
}

}  // namespace

void RunConfig::finalize() {
  const bool known =
      experiment == "taylor-green" || experiment == "cavity" || experiment == "dambreak" ||
      experiment == "truncation" || experiment == "optimize-weight" || experiment == "custom";
  if (!known)
    throw ConfigError("key 'experiment': unknown value '" + experiment +
                      "' (expected taylor-green, cavity, dambreak, truncation, optimize-weight, "
                      "custom)");

  if (experiment == "taylor-green" || experiment == "custom") {
    if (dx == 0.0) dx = 0.04;
    if (h_factor == 0.0) h_factor = 3.1;
    if (eps == 0.0) eps = convergence ? 2.5 * dx : 0.1;
    if (T == 0.0) T = 0.1;
    if (Re == 0.0) Re = 10.0;
    if (convergence && dx_list.empty()) dx_list = {0.04, 0.02, 0.01, 0.005};
    if (convergence && m == 0) m = 2;
  } else if (experiment == "cavity") {
    if (dx == 0.0) dx = 0.01;
    if (h_factor == 0.0) h_factor = 3.1;
    if (eps == 0.0) eps = 0.1;
    if (Re == 0.0) Re = 100.0;
  } else if (experiment == "dambreak") {
    if (dx == 0.0) dx = 0.005;
    if (h_factor == 0.0) h_factor = 2.6;
    if (eps == 0.0) eps = 0.05;
    if (T == 0.0) T = 1.3;
    free_surface = true;
  } else if (experiment == "truncation") {
    if (dx == 0.0) dx = 1.0 / 16.0;
    if (h_factor == 0.0) h_factor = 3.1;
  }

  if (!(dx > 0.0)) throw ConfigError("key 'dx': must be positive");
  if (!(h_factor > 0.0)) throw ConfigError("key 'h_factor': must be positive");
  if (experiment != "truncation" && experiment != "optimize-weight" && !(eps > 0.0))
    throw ConfigError("key 'eps': penalty parameter must be positive");
  if (tau < 0.0) throw ConfigError("key 'tau': must be positive or 0 (auto)");
  if (T < 0.0) throw ConfigError("key 'T': must be positive");
  if (Re < 0.0) throw ConfigError("key 'Re': must be positive");
  if (m < 0 || m > 4) throw ConfigError("key 'm': must lie in 0..4");
  if (!(eps_max >= 0.0 && eps_max < 1.0)) throw ConfigError("key 'eps_max': must lie in [0, 1)");
  if (snapshots < 0) throw ConfigError("key 'snapshots': must be >= 0");
  if (optimize_n < 2) throw ConfigError("key 'n': polynomial degree must be >= 2");
  if (optimize_dim != 2 && optimize_dim != 3) throw ConfigError("key 'dim': must be 2 or 3");
  if (max_steps <= 0) throw ConfigError("key 'max_steps': must be positive");
  if (!(steady_tol > 0.0)) throw ConfigError("key 'steady_tol': must be positive");
  if (backend != "auto" && backend != "scalar" && backend != "avx2")
    throw ConfigError("key 'backend': must be auto, scalar, or avx2");
  if (preset == PresetTag::Custom && custom_coeffs.empty())
    throw ConfigError("key 'preset': custom preset needs 'coeffs'");
  for (const double d : dx_list)
    if (!(d > 0.0)) throw ConfigError("key 'dx_list': entries must be positive");
  if (out_dir.empty()) out_dir = "epm-out-" + experiment;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  bool have_experiment = false;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string val = trim(t.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");

    if (key == "experiment") {
      cfg.experiment = val;
      have_experiment = true;
    } else if (key == "preset") {
      cfg.preset = parse_preset(val);
    } else if (key == "coeffs") {
      cfg.custom_coeffs = to_double_list(key, val);
      cfg.preset = PresetTag::Custom;
    } else if (key == "dx") {
      cfg.dx = to_double(key, val);
    } else if (key == "dx_list") {
      cfg.dx_list = to_double_list(key, val);
    } else if (key == "m") {
      cfg.m = static_cast<int>(to_long(key, val));
    } else if (key == "h_factor") {
      cfg.h_factor = to_double(key, val);
    } else if (key == "eps") {
      cfg.eps = to_double(key, val);
      if (!(cfg.eps > 0.0)) throw ConfigError("key 'eps': penalty parameter must be positive");
    } else if (key == "tau") {
      cfg.tau = val == "auto" ? 0.0 : to_double(key, val);
    } else if (key == "T") {
      cfg.T = to_double(key, val);
    } else if (key == "Re") {
      cfg.Re = to_double(key, val);
    } else if (key == "eps_max") {
      cfg.eps_max = to_double(key, val);
    } else if (key == "seed") {
      cfg.seeds = {static_cast<std::uint64_t>(to_long(key, val))};
    } else if (key == "seeds") {
      cfg.seeds.clear();
      for (const double s : to_double_list(key, val))
        cfg.seeds.push_back(static_cast<std::uint64_t>(s));
    } else if (key == "pressure_recalc") {
      cfg.pressure_recalc = to_bool(key, val);
    } else if (key == "free_surface") {
      cfg.free_surface = to_bool(key, val);
    } else if (key == "collision") {
      cfg.collision = to_bool(key, val);
    } else if (key == "convergence") {
      cfg.convergence = to_bool(key, val);
    } else if (key == "snapshots") {
      cfg.snapshots = static_cast<int>(to_long(key, val));
    } else if (key == "vtk") {
      cfg.vtk = to_bool(key, val);
    } else if (key == "spacetime_norm") {
      if (val == "printed")
        cfg.spacetime_norm = SpaceTimeVariant::Printed;
      else if (val == "squared")
        cfg.spacetime_norm = SpaceTimeVariant::Squared;
      else
        throw ConfigError("key 'spacetime_norm': must be printed or squared");
    } else if (key == "n") {
      cfg.optimize_n = static_cast<int>(to_long(key, val));
    } else if (key == "dim") {
      cfg.optimize_dim = static_cast<int>(to_long(key, val));
    } else if (key == "max_steps") {
      cfg.max_steps = to_long(key, val);
    } else if (key == "steady_tol") {
      cfg.steady_tol = to_double(key, val);
    } else if (key == "out") {
      cfg.out_dir = val;
    } else if (key == "reference") {
      cfg.reference_path = val;
    } else if (key == "backend") {
      cfg.backend = val;
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }
  if (!have_experiment) throw ConfigError("missing required key 'experiment'");
  cfg.finalize();
  return cfg;
}

std::string config_echo(const RunConfig& cfg) {
  std::ostringstream os;
  char buf[64];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  os << "experiment = " << cfg.experiment << "\n";
  os << "preset = " << preset_name(cfg.preset) << "\n";
  if (!cfg.custom_coeffs.empty()) {
    os << "coeffs = ";
    for (std::size_t i = 0; i < cfg.custom_coeffs.size(); ++i)
      os << (i ? "," : "") << num(cfg.custom_coeffs[i]);
    os << "\n";
  }
  os << "dx = " << num(cfg.dx) << "\n";
  if (!cfg.dx_list.empty()) {
    os << "dx_list = ";
    for (std::size_t i = 0; i < cfg.dx_list.size(); ++i) os << (i ? "," : "") << num(cfg.dx_list[i]);
    os << "\n";
  }
  os << "m = " << cfg.m << "\n";
  os << "h_factor = " << num(cfg.h_factor) << "\n";
  os << "eps = " << num(cfg.eps) << "\n";
  os << "tau = " << (cfg.tau == 0.0 ? std::string("auto") : num(cfg.tau)) << "\n";
  os << "T = " << num(cfg.T) << "\n";
  os << "Re = " << num(cfg.Re) << "\n";
  os << "eps_max = " << num(cfg.eps_max) << "\n";
  os << "seeds = ";
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i) os << (i ? "," : "") << cfg.seeds[i];
  os << "\n";
  os << "pressure_recalc = " << (cfg.pressure_recalc ? "true" : "false") << "\n";
  os << "free_surface = " << (cfg.free_surface ? "true" : "false") << "\n";
  os << "collision = " << (cfg.collision ? "true" : "false") << "\n";
  os << "convergence = " << (cfg.convergence ? "true" : "false") << "\n";
  os << "snapshots = " << cfg.snapshots << "\n";
  os << "vtk = " << (cfg.vtk ? "true" : "false") << "\n";
  os << "spacetime_norm = "
     << (cfg.spacetime_norm == SpaceTimeVariant::Printed ? "printed" : "squared") << "\n";
  os << "n = " << cfg.optimize_n << "\n";
  os << "dim = " << cfg.optimize_dim << "\n";
  os << "max_steps = " << cfg.max_steps << "\n";
  os << "steady_tol = " << num(cfg.steady_tol) << "\n";
  os << "out = " << cfg.out_dir << "\n";
  if (!cfg.reference_path.empty()) os << "reference = " << cfg.reference_path << "\n";
  os << "backend = " << cfg.backend << "\n";
  return os.str();
}

}  // namespace epm
