#include "inls/records.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace inls::lab {

namespace {

std::string fmt(Real x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

std::string records_to_csv(const std::vector<DiagnosticsRecord>& records) {
  std::string out;
  out += csv_version_line;
  out += '\n';
  out += csv_header_line;
  out += '\n';
  for (const auto& r : records) {
    out += fmt(r.t) + ',' + fmt(r.mass) + ',' + fmt(r.energy) + ',' + fmt(r.kinetic) + ',' +
           fmt(r.potential) + ',' + fmt(r.virial_m) + ',' + fmt(r.virial_rate) + ',' +
           fmt(r.l10_accum) + ',' + fmt(r.tail_fraction) + ',' + fmt(r.deviation) + '\n';
  }
  return out;
}

void write_records(const std::string& path, const std::vector<DiagnosticsRecord>& records) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << records_to_csv(records);
}

using nlohmann::json;

namespace {

json row_to_json(const RunRow& r) {
  return json{{"id", r.id},
              {"parameter", r.parameter},
              {"verdict", r.verdict},
              {"direction", r.direction},
              {"e0", r.e0},
              {"k0", r.k0},
              {"subthreshold_at_start", r.subthreshold_at_start},
              {"max_kinetic", r.max_kinetic},
              {"kinetic_below_threshold_all", r.kinetic_below_threshold_all},
              {"trailing_deviation", r.trailing_deviation},
              {"l10_total", r.l10_total},
              {"l10_trailing_fraction", r.l10_trailing_fraction},
              {"value", r.value},
              {"resolution", r.resolution},
              {"dt", r.dt},
              {"growth_factor", r.growth_factor},
              {"spectral_fill", r.spectral_fill},
              {"eps_scatter", r.eps_scatter}};
}

RunRow row_from_json(const json& j) {
  RunRow r;
  r.id = j.at("id");
  r.parameter = j.at("parameter");
  r.verdict = j.at("verdict");
  r.direction = j.at("direction");
  r.e0 = j.at("e0");
  r.k0 = j.at("k0");
  r.subthreshold_at_start = j.at("subthreshold_at_start");
  r.max_kinetic = j.at("max_kinetic");
  r.kinetic_below_threshold_all = j.at("kinetic_below_threshold_all");
  r.trailing_deviation = j.at("trailing_deviation");
  r.l10_total = j.at("l10_total");
  r.l10_trailing_fraction = j.at("l10_trailing_fraction");
  r.value = j.at("value");
  r.resolution = j.at("resolution");
  r.dt = j.at("dt");
  r.growth_factor = j.at("growth_factor");
  r.spectral_fill = j.at("spectral_fill");
  r.eps_scatter = j.at("eps_scatter");
  return r;
}

}  // namespace

std::string summary_to_json(const ExperimentSummary& s) {
  json j;
  j["experiment"] = s.experiment;
  j["seed"] = s.seed;
  j["runs"] = json::array();
  for (const auto& r : s.runs) j["runs"].push_back(row_to_json(r));
  if (s.bracket) {
    j["bracket"] = json{{"lo", s.bracket->lo},
                        {"hi", s.bracket->hi},
                        {"verdict_lo", s.bracket->verdict_lo},
                        {"verdict_hi", s.bracket->verdict_hi}};
  }
  j["constants"] = json::array();
  for (const auto& c : s.constants)
    j["constants"].push_back(json{{"name", c.name},
                                  {"measured", c.measured},
                                  {"exact", c.exact},
                                  {"rel_err", c.rel_err},
                                  {"tol", c.tol},
                                  {"pass", c.pass}});
  j["wall_seconds"] = s.wall_seconds;
  j["pass"] = s.pass;
  j["notes"] = s.notes;
  return j.dump(2);
}

ExperimentSummary summary_from_json(const std::string& text) {
  const json j = json::parse(text);
  ExperimentSummary s;
  s.experiment = j.at("experiment");
  s.seed = j.at("seed");
  for (const auto& r : j.at("runs")) s.runs.push_back(row_from_json(r));
  if (j.contains("bracket")) {
    Bracket b;
    b.lo = j["bracket"].at("lo");
    b.hi = j["bracket"].at("hi");
    b.verdict_lo = j["bracket"].at("verdict_lo");
    b.verdict_hi = j["bracket"].at("verdict_hi");
    s.bracket = b;
  }
  for (const auto& c : j.at("constants")) {
    ConstantRow row;
    row.name = c.at("name");
    row.measured = c.at("measured");
    row.exact = c.at("exact");
    row.rel_err = c.at("rel_err");
    row.tol = c.at("tol");
    row.pass = c.at("pass");
    s.constants.push_back(row);
  }
  s.wall_seconds = j.at("wall_seconds");
  s.pass = j.at("pass");
  for (const auto& n : j.at("notes")) s.notes.push_back(n);
  return s;
}

void write_summary(const std::string& path, const ExperimentSummary& s) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << summary_to_json(s) << "\n";
}

}  // namespace inls::lab
