#pragma once

#include <optional>
#include <vector>

#include "inls/fields.hpp"
#include "inls/solver.hpp"
#include "inls/virial.hpp"

namespace inls {

/// Per-sample snapshot of the tracked functionals.  Accumulators are
/// nondecreasing in time along a run.
struct DiagnosticsRecord {
  Real t = 0;
  Real mass = 0;
  Real energy = 0;
  Real kinetic = 0;
  Real potential = 0;
  Real virial_m = 0;     // M_a for the configured weight
  Real virial_rate = 0;  // assembled dM_a/dt
  Real l10_accum = 0;    // elapsed integral of |u|^10 dx dt
  Real grad_l30_11 = 0;  // instantaneous ||grad u||_{L^{30/11}}
  Real tail_fraction = 0;
  Real deviation = 0;  // trailing unwound-state distance, relative
};

struct ScatteringVerdict {
  bool determinable = false;  // >= 2 samples in the trailing window
  bool dispersed = false;
  bool radiation_clean = true;    // boundary-mass monitor
  Real trailing_deviation = 0;    // max pairwise over trailing window, relative
  std::optional<ComplexField> candidate;  // u_+ = psi(t_final)
};

struct DetectorOptions {
  Real eps_scatter = 1e-3;       // relative trailing-deviation threshold
  Real trailing_window = 0.25;   // fraction of samples examined
  Real boundary_mass_frac = 0.01;  // radiation monitor: outer-shell mass limit
};

/// Scattering detector operating on a history of unwound states
/// psi(t) = e^{-it Delta} u(t): the run is "dispersed" when the trailing
/// window is Cauchy in dot-H1 (all pairwise distances below eps) and the
/// radiation monitor is clean.
class ScatteringDetector {
 public:
  explicit ScatteringDetector(DetectorOptions opts = {}) : opts_(opts) {}

  /// Records e^{-t Delta(direction)} applied to the current state.
  void add_sample(const SimulationState& state);
  ScatteringVerdict verdict() const;
  /// Deviation of the latest unwound state from the previous one, relative.
  Real last_deviation() const { return last_dev_; }
  int samples() const { return static_cast<int>(times_.size()); }

 private:
  DetectorOptions opts_;
  std::vector<Real> times_;
  std::vector<ComplexField> unwound_;
  // dot-H1-weighted spectral coefficients per sample (radial grids), so the
  // pairwise Cauchy scan avoids re-transforming histories.
  std::vector<ArrayXc> coeffs_;
  std::vector<Real> boundary_frac_;
  Real ref_h1_ = 0;
  Real last_dev_ = 0;
};

/// Trapezoid-in-time accumulator for space-time norms (nondecreasing).
class TimeAccumulator {
 public:
  void add(Real t, Real integrand);
  Real value() const { return value_; }
  /// Share of the total gathered over the trailing fraction of elapsed time.
  Real trailing_increment_fraction(Real window = 0.25) const;

 private:
  std::vector<Real> times_;
  std::vector<Real> partial_;
  Real value_ = 0;
  Real prev_t_ = 0;
  Real prev_f_ = 0;
  bool have_prev_ = false;
};

struct FarCenterResult {
  Real deviation = 0;  // ||u(T) - e^{iT Delta} u0||_{dot H1} / ||u0||_{dot H1}
  bool aborted = false;
  Real boundary_mass = 0;  // peak outer-shell mass fraction seen
};

struct FarCenterParams {
  Real center[3] = {0, 0, 0};
  Real width = 1.0;
  Real amplitude = 1.0;
  Real t_final = 1.0;
  Real dt = 0.01;
  int mu = +1;
  Real boundary_mass_frac = 0.01;
};

/// Runs nonlinear and free evolutions from the same off-center Gaussian and
/// measures the relative dot-H1 deviation at the final time.
FarCenterResult far_center_deviation(std::shared_ptr<const Grid3D> grid,
                                     const FarCenterParams& params);

ComplexField gaussian_field(std::shared_ptr<const RadialGrid> grid, Real amplitude, Real width);
ComplexField gaussian_field(std::shared_ptr<const Grid3D> grid, Real amplitude, Real width,
                            const Real center[3]);

}  // namespace inls
