// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// An optional argv[1] selects a single criterion by number.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "inls/experiments.hpp"
#include "inls/ground_state.hpp"
#include "inls/variational.hpp"

using namespace inls;
using namespace inls::lab;

namespace {

struct Result {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string cfg_path(const char* name) {
  return std::string(INLS_CONFIG_DIR) + "/" + name;
}

char buf[512];

// --- criterion 1: constants suite ------------------------------------------
Result criterion1() {
  const auto t0 = Clock::now();
  RunConfig cfg = load_config(cfg_path("constants.ini"));
  cfg.constants.run_ascent = false;  // the ascent is criterion 3
  const ExperimentSummary s = run_constants_suite(cfg);
  bool ok = true;
  double worst = 0;
  for (const auto& row : s.constants) {
    if (row.name == "kinetic_Q" || row.name == "potential_Q" || row.name == "energy_Q" ||
        row.name == "C1") {
      ok = ok && row.pass;
      worst = std::max(worst, row.rel_err);
    }
  }
  const double secs = elapsed(t0);
  ok = ok && secs < 10.0;
  std::snprintf(buf, sizeof(buf), "worst rel err %.2e (tol 5e-3), %.1f s (limit 10 s)", worst,
                secs);
  return {ok, buf};
}

// --- criterion 2: elliptic residual order ------------------------------------
Result criterion2() {
  const auto t0 = Clock::now();
  const Real r1 = elliptic_residual(*RadialGrid::uniform(500, 40.0));
  const Real r2 = elliptic_residual(*RadialGrid::uniform(1000, 40.0));
  const Real r3 = elliptic_residual(*RadialGrid::uniform(2000, 40.0));
  const Real q1 = r1 / r2, q2 = r2 / r3;
  const bool order2 = q1 > 3.0 && q1 < 5.5 && q2 > 3.0 && q2 < 5.5;
  const double secs = elapsed(t0);
  std::snprintf(buf, sizeof(buf),
                "residuals %.3e -> %.3e -> %.3e, ratios %.2f / %.2f, %.1f s (limit 10 s)", r1, r2,
                r3, q1, q2, secs);
  return {order2 && secs < 10.0, buf};
}

// --- criterion 3: Weinstein ascent -------------------------------------------
Result criterion3() {
  const auto t0 = Clock::now();
  const AscentResult res = sharp_constant_via_optimization();
  const Real rel = std::abs(res.value - sharp_C1) / sharp_C1;
  const double secs = elapsed(t0);
  std::snprintf(buf, sizeof(buf), "quotient %.8f vs 3/(8 pi) = %.8f, rel err %.2e, %d iters, %.1f s",
                res.value, sharp_C1, rel, res.iterations, secs);
  return {rel < 0.01 && secs < 60.0, buf};
}

// --- criterion 4: conservation -----------------------------------------------
Result criterion4() {
  const auto t0 = Clock::now();
  auto grid = RadialGrid::uniform(3072, 40.0);
  SimulationState st = make_state(gaussian_field(grid, 0.5, 1.0));
  StepParams sp{1e-4, +1, true};  // the design point dt ~ 0.5 h^2
  const Real m0 = mass(st.u);
  const Real k0 = h1dot_norm_sq_sine(st.u);
  const Real p0 = weighted_integral(st.u, WeightedNormSpec(1, 4)).value;
  const Real e0 = 0.5 * k0 - 0.25 * p0;
  Real dm = 0, de = 0;
  for (int i = 0; i < 1000; ++i) {
    strang_step(st, sp);
    if ((i + 1) % 50 == 0) {
      dm = std::max(dm, std::abs(mass(st.u) - m0) / m0);
      const Real e = 0.5 * h1dot_norm_sq_sine(st.u) -
                     0.25 * weighted_integral(st.u, WeightedNormSpec(1, 4)).value;
      de = std::max(de, std::abs(e - e0) / std::abs(e0));
    }
  }
  const double secs = elapsed(t0);
  std::snprintf(buf, sizeof(buf), "mass drift %.2e (limit 1e-8), energy drift %.2e (limit 1e-6), %.1f s",
                dm, de, secs);
  return {dm < 1e-8 && de < 1e-6 && secs < 60.0, buf};
}

// --- criteria 5 and 6 share one sub-threshold radial trajectory ---------------
struct Trajectory {
  std::vector<Real> times;
  std::vector<ComplexField> states;
};

Trajectory subthreshold_trajectory() {
  Trajectory traj;
  auto grid = RadialGrid::uniform(4096, 200.0);
  ComplexField u0 = gaussian_field(grid, 0.5, 1.0);
  SimOptions opt;
  opt.dt = 0.002;
  opt.mu = +1;
  opt.t_final = 8.0;
  opt.sample_interval = 0.04;
  opt.enable_scatter_detector = false;
  opt.weight = DiagnosticsSpec::Weight::none;
  opt.heavy_records = false;
  opt.on_sample = [&](const SimulationState& st) {
    traj.times.push_back(st.time());
    traj.states.push_back(st.u);
  };
  simulate(u0, opt);
  return traj;
}

Result criterion5(const Trajectory& traj) {
  const auto t0 = Clock::now();
  if (traj.states.size() < 8) return {false, "trajectory too short"};

  Real r99 = 0;
  for (size_t i = 0; i < traj.states.size(); i += 4)
    r99 = std::max(r99, tightness_radius(traj.states[i], 0.99));
  r99 = std::max(r99, tightness_radius(traj.states.back(), 0.99));

  auto check_weight = [&](const VirialWeight& w) {
    std::vector<Real> m(traj.states.size()), rate(traj.states.size());
    for (size_t i = 0; i < traj.states.size(); ++i) {
      m[i] = virial_quantity(traj.states[i], w);
      rate[i] = virial_rate(traj.states[i], w);
    }
    Real max_rate = 0;
    for (const Real r : rate) max_rate = std::max(max_rate, std::abs(r));
    Real worst = 0;
    for (size_t i = 1; i + 1 < traj.states.size(); ++i) {
      const Real fd = (m[i + 1] - m[i - 1]) / (traj.times[i + 1] - traj.times[i - 1]);
      const Real denom = std::max(std::abs(rate[i]), 0.2 * max_rate);
      worst = std::max(worst, std::abs(fd - rate[i]) / denom);
    }
    return worst;
  };

  const Real worst_pure = check_weight(VirialWeight::pure());
  const Real worst_loc = check_weight(VirialWeight::localized(r99));
  const double secs = elapsed(t0);
  std::snprintf(buf, sizeof(buf),
                "pure-weight mismatch %.2e, localized (R=%.1f) mismatch %.2e (limit 3e-2), %.1f s",
                worst_pure, r99, worst_loc, secs);
  return {worst_pure < 0.03 && worst_loc < 0.03 && 2.0 * r99 < 200.0, buf};
}

Result criterion6(const Trajectory& traj) {
  bool ok = !traj.states.empty();
  Real worst_margin = 1e30, max_kin = 0;
  for (const auto& u : traj.states) {
    const Real kin = h1dot_norm_sq(u);
    const Real pot = weighted_integral(u, WeightedNormSpec(1, 4)).value;
    max_kin = std::max(max_kin, kin);
    if (kin >= kinetic_Q) ok = false;
    const Real margin = kin - pot;
    const Real bound = (1.0 - sharp_C1 * kin) * kin;
    worst_margin = std::min(worst_margin, margin - bound);
    if (margin < bound - 1e-3) ok = false;
  }
  std::snprintf(buf, sizeof(buf),
                "max kinetic %.4f < 8 pi/3 = %.4f, min margin-above-bound %.2e (limit -1e-3)",
                max_kin, kinetic_Q, worst_margin);
  return {ok, buf};
}

// --- criterion 7: dichotomy ---------------------------------------------------
Result criterion7() {
  const auto t0 = Clock::now();
  RunConfig cfg = load_config(cfg_path("dichotomy.ini"));
  const ExperimentSummary s = run_dichotomy_bisection(cfg);
  const double secs = elapsed(t0);
  std::string b = s.bracket ? "[" + std::to_string(s.bracket->lo) + ", " +
                                  std::to_string(s.bracket->hi) + "]"
                            : "none";
  std::snprintf(buf, sizeof(buf), "bracket %s, %zu runs, %.0f s (limit 1800 s)%s", b.c_str(),
                s.runs.size(), secs, s.notes.empty() ? "" : " [notes]");
  return {s.pass && secs < 1800.0, buf};
}

// --- criterion 8: far-center mechanism ----------------------------------------
Result criterion8() {
  const auto t0 = Clock::now();
  RunConfig cfg = load_config(cfg_path("farcenter.ini"));
  const ExperimentSummary s = run_far_center_sweep(cfg);
  const double secs = elapsed(t0);
  bool ok = s.pass && s.runs.size() == 4;
  Real centered = 0, farthest = 0;
  for (const auto& r : s.runs) {
    if (r.parameter == 0.0) centered = r.value;
    if (r.parameter == 20.0) farthest = r.value;
    if (r.verdict != "ok") ok = false;
  }
  ok = ok && centered > 0 && farthest < 0.25 * centered;
  std::snprintf(buf, sizeof(buf),
                "deviations %.4f (x0=0) .. %.4f (x0=20), ratio %.3f (limit 0.25), %.0f s",
                centered, farthest, centered > 0 ? farthest / centered : 1.0, secs);
  return {ok && secs < 1800.0, buf};
}

// --- criterion 9: defocusing ---------------------------------------------------
Result criterion9() {
  const auto t0 = Clock::now();
  RunConfig cfg = load_config(cfg_path("defocusing.ini"));
  const ExperimentSummary s = run_defocusing_suite(cfg);
  const double secs = elapsed(t0);
  bool ok = s.pass && s.runs.size() == 4;
  Real worst_dev = 0, worst_l10_tail = 0;
  for (const auto& r : s.runs) {
    if (r.verdict != "dispersed") ok = false;
    worst_dev = std::max(worst_dev, r.trailing_deviation);
    worst_l10_tail = std::max(worst_l10_tail, r.l10_trailing_fraction);
  }
  std::snprintf(buf, sizeof(buf),
                "4 runs, worst trailing deviation %.2e, worst L10 tail share %.2e, %.0f s "
                "(limit 900 s)",
                worst_dev, worst_l10_tail, secs);
  return {ok && secs < 900.0, buf};
}

}  // namespace

int main(int argc, char** argv) {
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  struct Item {
    int n;
    const char* name;
    Result r;
  };
  std::vector<Item> items;

  Trajectory traj;
  const bool need_traj = only == 0 || only == 5 || only == 6;
  if (need_traj) traj = subthreshold_trajectory();

  auto want = [&](int n) { return only == 0 || only == n; };
  if (want(1)) items.push_back({1, "constants suite within 0.5%", criterion1()});
  if (want(2)) items.push_back({2, "elliptic residual order-2 decay", criterion2()});
  if (want(3)) items.push_back({3, "Weinstein ascent recovers 3/(8 pi)", criterion3()});
  if (want(4)) items.push_back({4, "mass/energy conservation over 1000 steps", criterion4()});
  if (want(5)) items.push_back({5, "virial rate consistency (pure + localized)", criterion5(traj)});
  if (want(6)) items.push_back({6, "coercivity along the sub-threshold flow", criterion6(traj)});
  if (want(7)) items.push_back({7, "dichotomy bisection bracket", criterion7()});
  if (want(8)) items.push_back({8, "far-center deviation monotone and small", criterion8()});
  if (want(9)) items.push_back({9, "defocusing scatters in both directions", criterion9()});

  bool all = true;
  for (const auto& it : items) {
    std::printf("[%s] criterion %d: %s — %s\n", it.r.pass ? "PASS" : "FAIL", it.n, it.name,
                it.r.detail.c_str());
    all = all && it.r.pass;
  }
  std::printf("%s\n", all ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILURES PRESENT");
  return all ? 0 : 1;
}
