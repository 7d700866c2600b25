#include "inls/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace inls::lab {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

Real parse_real(const std::string& v, int line, const std::string& key) {
  try {
    size_t pos = 0;
    const Real x = std::stod(v, &pos);
    if (pos != v.size()) fail(line, "trailing characters in value for '" + key + "'");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(line, "cannot parse number for '" + key + "'");
  }
}

long parse_int(const std::string& v, int line, const std::string& key) {
  try {
    size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) fail(line, "trailing characters in value for '" + key + "'");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(line, "cannot parse integer for '" + key + "'");
  }
}

std::vector<Real> parse_list(const std::string& v, int line, const std::string& key) {
  std::vector<Real> out;
  std::istringstream ss(v);
  std::string tok;
  while (ss >> tok) out.push_back(parse_real(tok, line, key));
  if (out.empty()) fail(line, "empty list for '" + key + "'");
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section = "run";
  int line_no = 0;
  bool have_initial_family = false;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      const bool known = section == "run" || section == "grid" || section == "time" ||
                         section == "initial" || section == "detect" ||
                         section == "diagnostics" || section == "dichotomy" ||
                         section == "farcenter" || section == "defocusing" ||
                         section == "constants";
      if (!known) fail(line_no, "unknown section '" + section + "'");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    if (val.empty()) fail(line_no, "empty value for '" + key + "'");

    auto unknown = [&]() { fail(line_no, "unknown key '" + key + "' in [" + section + "]"); };

    if (section == "run") {
      if (key == "experiment") {
        const bool ok = val == "constants" || val == "dichotomy" || val == "farcenter" ||
                        val == "defocusing" || val == "single-run";
        if (!ok) fail(line_no, "unknown experiment '" + val + "'");
        cfg.experiment = val;
      } else if (key == "mu") {
        const long m = parse_int(val, line_no, key);
        if (m != 1 && m != -1) fail(line_no, "mu must be +1 or -1");
        cfg.mu = static_cast<int>(m);
      } else if (key == "seed") {
        cfg.seed = static_cast<unsigned long>(parse_int(val, line_no, key));
      } else if (key == "out") {
        cfg.out_dir = val;
      } else {
        unknown();
      }
    } else if (section == "grid") {
      if (key == "kind") {
        if (val == "radial") cfg.grid.kind = GridSpec::Kind::radial;
        else if (val == "box3d") cfg.grid.kind = GridSpec::Kind::box3d;
        else fail(line_no, "grid kind must be 'radial' or 'box3d'");
      } else if (key == "nr") cfg.grid.nr = static_cast<int>(parse_int(val, line_no, key));
      else if (key == "rmax") cfg.grid.r_max = parse_real(val, line_no, key);
      else if (key == "n") cfg.grid.n = static_cast<int>(parse_int(val, line_no, key));
      else if (key == "half_width") cfg.grid.half_width = parse_real(val, line_no, key);
      else unknown();
    } else if (section == "time") {
      if (key == "dt") cfg.time.dt = parse_real(val, line_no, key);
      else if (key == "cfl") cfg.time.cfl = parse_real(val, line_no, key);
      else if (key == "t_final") cfg.time.t_final = parse_real(val, line_no, key);
      else if (key == "sample_interval") cfg.time.sample_interval = parse_real(val, line_no, key);
      else unknown();
    } else if (section == "initial") {
      if (key == "family") {
        if (val == "gaussian") cfg.initial.family = InitialData::Family::gaussian;
        else if (val == "rescaled_q") cfg.initial.family = InitialData::Family::rescaled_q;
        else if (val == "samples_file") cfg.initial.family = InitialData::Family::samples_file;
        else fail(line_no, "unknown initial-data family '" + val + "'");
        if (have_initial_family) fail(line_no, "initial-data family set twice");
        have_initial_family = true;
      } else if (key == "amplitude") cfg.initial.amplitude = parse_real(val, line_no, key);
      else if (key == "width") cfg.initial.width = parse_real(val, line_no, key);
      else if (key == "center") {
        const auto c = parse_list(val, line_no, key);
        if (c.size() != 3) fail(line_no, "center needs three components");
        cfg.initial.center = {c[0], c[1], c[2]};
      } else if (key == "factor") cfg.initial.factor = parse_real(val, line_no, key);
      else if (key == "lambda") cfg.initial.lambda = parse_real(val, line_no, key);
      else if (key == "path") cfg.initial.path = val;
      else unknown();
    } else if (section == "detect") {
      if (key == "growth_factor") cfg.detect.growth_factor = parse_real(val, line_no, key);
      else if (key == "spectral_fill") cfg.detect.spectral_fill = parse_real(val, line_no, key);
      else if (key == "eps_scatter") cfg.detect.eps_scatter = parse_real(val, line_no, key);
      else if (key == "trailing_window") cfg.detect.trailing_window = parse_real(val, line_no, key);
      else if (key == "boundary_mass_frac")
        cfg.detect.boundary_mass_frac = parse_real(val, line_no, key);
      else if (key == "min_verdict_fraction")
        cfg.detect.min_verdict_fraction = parse_real(val, line_no, key);
      else unknown();
    } else if (section == "diagnostics") {
      if (key == "virial_weight") {
        if (val == "none") cfg.diagnostics.virial_weight = DiagnosticsSpec::Weight::none;
        else if (val == "pure") cfg.diagnostics.virial_weight = DiagnosticsSpec::Weight::pure;
        else if (val == "localized")
          cfg.diagnostics.virial_weight = DiagnosticsSpec::Weight::localized;
        else fail(line_no, "virial_weight must be none|pure|localized");
      } else if (key == "virial_radius") cfg.diagnostics.virial_radius = parse_real(val, line_no, key);
      else unknown();
    } else if (section == "dichotomy") {
      if (key == "c_low") cfg.dichotomy.c_low = parse_real(val, line_no, key);
      else if (key == "c_high") cfg.dichotomy.c_high = parse_real(val, line_no, key);
      else if (key == "tol") cfg.dichotomy.tol = parse_real(val, line_no, key);
      else if (key == "resolution_scale")
        cfg.dichotomy.resolution_scale = static_cast<int>(parse_int(val, line_no, key));
      else if (key == "max_iterations")
        cfg.dichotomy.max_iterations = static_cast<int>(parse_int(val, line_no, key));
      else unknown();
    } else if (section == "farcenter") {
      if (key == "centers") cfg.farcenter.centers = parse_list(val, line_no, key);
      else unknown();
    } else if (section == "defocusing") {
      if (key == "amplitudes") cfg.defocusing.amplitudes = parse_list(val, line_no, key);
      else unknown();
    } else if (section == "constants") {
      if (key == "panels") cfg.constants.panels = static_cast<int>(parse_int(val, line_no, key));
      else if (key == "nodes_per_panel")
        cfg.constants.nodes_per_panel = static_cast<int>(parse_int(val, line_no, key));
      else if (key == "map_scale") cfg.constants.map_scale = parse_real(val, line_no, key);
      else if (key == "tolerance") cfg.constants.tolerance = parse_real(val, line_no, key);
      else if (key == "use_mapped_grid")
        cfg.constants.use_mapped_grid = parse_int(val, line_no, key) != 0;
      else if (key == "run_ascent") cfg.constants.run_ascent = parse_int(val, line_no, key) != 0;
      else unknown();
    }
  }

  // dimensional sanity
  if (cfg.grid.nr <= 0 || cfg.grid.r_max <= 0 || cfg.grid.n <= 0 || cfg.grid.half_width <= 0)
    throw ConfigError("config: grid dimensions must be positive");
  if (cfg.time.dt < 0 || cfg.time.cfl <= 0 || cfg.time.t_final <= 0 ||
      cfg.time.sample_interval <= 0)
    throw ConfigError("config: time parameters must be positive");
  if (cfg.initial.width <= 0 || cfg.initial.lambda <= 0)
    throw ConfigError("config: initial-data scales must be positive");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_text(const RunConfig& c) {
  std::ostringstream o;
  o.precision(17);
  o << "[run]\n"
    << "experiment = " << c.experiment << "\n"
    << "mu = " << (c.mu > 0 ? "+1" : "-1") << "\n"
    << "seed = " << c.seed << "\n";
  if (!c.out_dir.empty()) o << "out = " << c.out_dir << "\n";
  o << "\n[grid]\n"
    << "kind = " << (c.grid.kind == GridSpec::Kind::radial ? "radial" : "box3d") << "\n"
    << "nr = " << c.grid.nr << "\nrmax = " << c.grid.r_max << "\n"
    << "n = " << c.grid.n << "\nhalf_width = " << c.grid.half_width << "\n";
  o << "\n[time]\n"
    << "dt = " << c.time.dt << "\ncfl = " << c.time.cfl << "\nt_final = " << c.time.t_final
    << "\nsample_interval = " << c.time.sample_interval << "\n";
  o << "\n[initial]\n";
  switch (c.initial.family) {
    case InitialData::Family::gaussian: o << "family = gaussian\n"; break;
    case InitialData::Family::rescaled_q: o << "family = rescaled_q\n"; break;
    case InitialData::Family::samples_file: o << "family = samples_file\n"; break;
  }
  o << "amplitude = " << c.initial.amplitude << "\nwidth = " << c.initial.width << "\n"
    << "center = " << c.initial.center[0] << " " << c.initial.center[1] << " "
    << c.initial.center[2] << "\n"
    << "factor = " << c.initial.factor << "\nlambda = " << c.initial.lambda << "\n";
  if (!c.initial.path.empty()) o << "path = " << c.initial.path << "\n";
  o << "\n[detect]\n"
    << "growth_factor = " << c.detect.growth_factor << "\nspectral_fill = "
    << c.detect.spectral_fill << "\neps_scatter = " << c.detect.eps_scatter
    << "\ntrailing_window = " << c.detect.trailing_window << "\nboundary_mass_frac = "
    << c.detect.boundary_mass_frac << "\nmin_verdict_fraction = "
    << c.detect.min_verdict_fraction << "\n";
  o << "\n[diagnostics]\n";
  switch (c.diagnostics.virial_weight) {
    case DiagnosticsSpec::Weight::none: o << "virial_weight = none\n"; break;
    case DiagnosticsSpec::Weight::pure: o << "virial_weight = pure\n"; break;
    case DiagnosticsSpec::Weight::localized: o << "virial_weight = localized\n"; break;
  }
  o << "virial_radius = " << c.diagnostics.virial_radius << "\n";
  o << "\n[dichotomy]\n"
    << "c_low = " << c.dichotomy.c_low << "\nc_high = " << c.dichotomy.c_high << "\ntol = "
    << c.dichotomy.tol << "\nresolution_scale = " << c.dichotomy.resolution_scale
    << "\nmax_iterations = " << c.dichotomy.max_iterations << "\n";
  o << "\n[farcenter]\ncenters =";
  for (const Real x : c.farcenter.centers) o << " " << x;
  o << "\n";
  o << "\n[defocusing]\namplitudes =";
  for (const Real a : c.defocusing.amplitudes) o << " " << a;
  o << "\n";
  o << "\n[constants]\n"
    << "panels = " << c.constants.panels << "\nnodes_per_panel = " << c.constants.nodes_per_panel
    << "\nmap_scale = " << c.constants.map_scale << "\ntolerance = " << c.constants.tolerance
    << "\nuse_mapped_grid = " << (c.constants.use_mapped_grid ? 1 : 0)
    << "\nrun_ascent = " << (c.constants.run_ascent ? 1 : 0) << "\n";
  return o.str();
}

void scale_resolution(RunConfig& cfg, Real factor) {
  if (factor <= 0) throw ConfigError("resolution scale must be positive");
  cfg.grid.nr = std::max(8, static_cast<int>(std::lround(cfg.grid.nr * factor)));
  int n = cfg.grid.n;
  Real target = n * factor;
  int p = 8;
  while (2 * p <= target) p *= 2;
  cfg.grid.n = p;
}

}  // namespace inls::lab
