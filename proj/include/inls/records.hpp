#pragma once

#include <optional>
#include <string>
#include <vector>

#include "inls/diagnostics.hpp"
#include "inls/types.hpp"

namespace inls::lab {

inline constexpr const char* csv_version_line = "# inls-lab csv v1";
inline constexpr const char* csv_header_line =
    "t,mass,energy,kinetic,potential,M_a,rate,l10_accum,tail_fraction,deviation";

/// Frozen-order CSV, one row per sample, doubles at full round-trip precision.
std::string records_to_csv(const std::vector<DiagnosticsRecord>& records);
void write_records(const std::string& path, const std::vector<DiagnosticsRecord>& records);

/// One verdict row of an experiment.  Every verdict carries the tolerances
/// and resolution it was produced with.
struct RunRow {
  std::string id;
  Real parameter = 0;  // amplitude or center distance, per experiment
  std::string verdict;
  int direction = +1;
  Real e0 = 0, k0 = 0;
  bool subthreshold_at_start = false;
  Real max_kinetic = 0;
  bool kinetic_below_threshold_all = false;
  Real trailing_deviation = 0;
  Real l10_total = 0;
  Real l10_trailing_fraction = 1;
  Real value = 0;  // experiment-specific measurement (e.g. far-center deviation)
  int resolution = 0;
  Real dt = 0;
  Real growth_factor = 0, spectral_fill = 0, eps_scatter = 0;

  bool operator==(const RunRow&) const = default;
};

struct ConstantRow {
  std::string name;
  Real measured = 0, exact = 0, rel_err = 0, tol = 0;
  bool pass = false;

  bool operator==(const ConstantRow&) const = default;
};

struct Bracket {
  Real lo = 0, hi = 0;
  std::string verdict_lo, verdict_hi;

  bool operator==(const Bracket&) const = default;
};

struct ExperimentSummary {
  std::string experiment;
  unsigned long seed = 0;
  std::vector<RunRow> runs;
  std::optional<Bracket> bracket;  // endpoints carry opposite verdicts
  std::vector<ConstantRow> constants;
  Real wall_seconds = 0;
  bool pass = false;
  std::vector<std::string> notes;

  bool operator==(const ExperimentSummary&) const = default;
};

std::string summary_to_json(const ExperimentSummary& s);
ExperimentSummary summary_from_json(const std::string& text);
void write_summary(const std::string& path, const ExperimentSummary& s);

}  // namespace inls::lab
