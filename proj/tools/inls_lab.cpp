// inls-lab command line driver: variational constants, dichotomy bisection,
// far-center sweeps, defocusing runs and generic single runs, configured by
// line-oriented key = value files.
//
// Exit codes: 0 all assertions pass, 1 assertion failure, 2 configuration error.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "inls/experiments.hpp"

namespace {

using inls::lab::ExperimentSummary;
using inls::lab::RunConfig;

void print_summary(const ExperimentSummary& s) {
  std::printf("experiment: %s  (%.2f s)\n", s.experiment.c_str(), s.wall_seconds);
  for (const auto& c : s.constants)
    std::printf("  %-18s measured=%.9g exact=%.9g rel_err=%.3g tol=%.3g  [%s]\n", c.name.c_str(),
                c.measured, c.exact, c.rel_err, c.tol, c.pass ? "ok" : "FAIL");
  for (const auto& r : s.runs)
    std::printf("  %-22s param=%-10.5g verdict=%-18s value=%.6g dev=%.3g l10=%.6g\n",
                r.id.c_str(), r.parameter, r.verdict.c_str(), r.value, r.trailing_deviation,
                r.l10_total);
  if (s.bracket)
    std::printf("  bracket: [%.6g, %.6g]  (%s | %s)\n", s.bracket->lo, s.bracket->hi,
                s.bracket->verdict_lo.c_str(), s.bracket->verdict_hi.c_str());
  for (const auto& n : s.notes) std::printf("  note: %s\n", n.c_str());
  std::printf("result: %s\n", s.pass ? "PASS" : "FAIL");
}

RunConfig default_config(const std::string& experiment) {
  RunConfig cfg;
  cfg.experiment = experiment;
  if (experiment == "defocusing") cfg.mu = -1;
  if (experiment == "farcenter") {
    cfg.grid.kind = inls::lab::GridSpec::Kind::box3d;
    cfg.grid.n = 128;
    cfg.grid.half_width = 32.0;
    cfg.time.dt = 0.01;
    cfg.time.t_final = 1.0;
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for the 3-D energy-critical inhomogeneous NLS"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  double resolution_scale = 1.0;
  long seed = -1;

  for (const std::string name :
       {"constants", "dichotomy", "farcenter", "defocusing", "single-run"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "path to a key = value config file");
    sub->add_option("--out", out_dir, "output directory for CSV records and summary.json");
    sub->add_option("--resolution-scale", resolution_scale, "multiply grid resolution");
    sub->add_option("--seed", seed, "random seed recorded in outputs");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string sub = app.get_subcommands().front()->get_name();

  try {
    RunConfig cfg = config_path.empty() ? default_config(sub) : inls::lab::load_config(config_path);
    cfg.experiment = sub;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (seed >= 0) cfg.seed = static_cast<unsigned long>(seed);
    if (resolution_scale != 1.0) inls::lab::scale_resolution(cfg, resolution_scale);

    const ExperimentSummary summary = inls::lab::run_experiment(cfg);
    print_summary(summary);
    return summary.pass ? 0 : 1;
  } catch (const inls::lab::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
