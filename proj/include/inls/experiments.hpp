#pragma once

#include <functional>
#include <string>
#include <vector>

#include "inls/config.hpp"
#include "inls/diagnostics.hpp"
#include "inls/records.hpp"
#include "inls/solver.hpp"

namespace inls::lab {

struct SimOptions {
  Real dt = 1e-3;
  int mu = +1;
  Real t_final = 10.0;
  Real sample_interval = 0.1;
  int direction = +1;
  bool dealias = true;
  DetectThresholds thresholds;
  DetectorOptions detector;
  Real min_verdict_time = 0;  // earliest time a dispersed verdict may fire
  bool enable_scatter_detector = true;
  DiagnosticsSpec::Weight weight = DiagnosticsSpec::Weight::pure;
  Real weight_radius = 0;
  bool heavy_records = true;  // instantaneous grad-L^{30/11}
  std::function<void(const SimulationState&)> on_sample;
};

struct RunOutcome {
  SimStatus status = SimStatus::running;
  ScatteringVerdict scatter;
  std::vector<DiagnosticsRecord> records;
  Real e0 = 0, k0 = 0;
  bool subthreshold_at_start = false;
  Real max_kinetic = 0;
  bool kinetic_below_threshold_all = true;
  Real l10_total = 0;
  Real l10_trailing_fraction = 1;
};

/// Advances u0 with Strang steps, sampling diagnostics on a fixed cadence;
/// terminal detector statuses stop the run.
RunOutcome simulate(const ComplexField& u0, const SimOptions& opt);

ComplexField build_initial_data(const RunConfig& cfg);
SimOptions sim_options_from(const RunConfig& cfg);

ExperimentSummary run_constants_suite(const RunConfig& cfg);
ExperimentSummary run_dichotomy_bisection(const RunConfig& cfg);
ExperimentSummary run_far_center_sweep(const RunConfig& cfg);
ExperimentSummary run_defocusing_suite(const RunConfig& cfg);
ExperimentSummary run_single(const RunConfig& cfg);

/// Dispatches on cfg.experiment and persists CSV/JSON outputs when an output
/// directory is configured.
ExperimentSummary run_experiment(const RunConfig& cfg);

}  // namespace inls::lab
