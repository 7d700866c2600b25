#pragma once

#include "inls/fields.hpp"
#include "inls/ops.hpp"

namespace inls {

enum class SimStatus { running, dispersed, blowup_suspected, underresolved, time_exhausted };

const char* to_string(SimStatus s);

/// Trajectory state.  `elapsed` advances monotonically; `direction` carries
/// the sign of physical time, so backward runs keep the monotone invariant.
/// Terminal statuses absorb: `advance_status` refuses to leave them.
struct SimulationState {
  ComplexField u;
  Real elapsed = 0;
  int direction = +1;
  long steps = 0;
  SimStatus status = SimStatus::running;
  Real initial_h1 = 0;  // sqrt of the initial kinetic, set by make_state

  Real time() const { return direction * elapsed; }
  void advance_status(SimStatus next) {
    if (status == SimStatus::running) status = next;
  }
};

SimulationState make_state(ComplexField u0, int direction = +1);

struct StepParams {
  Real dt = 1e-3;  // must be positive; direction lives in the state
  int mu = +1;     // +1 focusing, -1 defocusing
  bool dealias = true;
};

/// e^{it Delta} on the box (Fourier multipliers, exact for band-limited
/// data); on uniform radial grids the substituted variable v = r u evolves
/// by the half-line sine-series propagator with v(0) = v(r_max) = 0.
ComplexField free_propagate(const ComplexField& f, Real t);

/// Exact pointwise flow of i u_t = -mu w(x) |u|^2 u over time tau:
/// u -> u exp(i mu tau w |u|^2) with w the (regularized) 1/|x| weight.
/// The modulus is preserved at every node.
ComplexField nonlinear_phase_step(const ComplexField& f, Real tau, int mu);

/// One Strang step: half phase, full free flow, half phase; the 2/3-rule
/// mask is applied during the spectral pass when params.dealias is set.
/// NaN/Inf in the result marks the state underresolved.
void strang_step(SimulationState& state, const StepParams& params);

/// v = r*u and back (uniform radial grids); the round trip is exact at nodes.
ArrayXc radial_transform_in(const ComplexField& u);
ComplexField radial_transform_out(const ComplexField& like, const ArrayXc& v);

/// Kinetic norm of a radial state computed in the sine basis:
/// ||grad u||^2 = 4 pi * integral |d_r v|^2 dr, exact for the interpolant.
Real h1dot_norm_sq_sine(const ComplexField& u);

/// Fraction of the kinetic (dot-H1) mass above the 2/3 dealiasing cutoff.
Real spectral_fill_fraction(const ComplexField& u);

struct DetectThresholds {
  Real growth_factor = 10.0;   // dot-H1 norm growth flagging blowup
  Real spectral_fill = 0.10;   // kinetic fraction above cutoff -> underresolved
};

/// Growth/underresolution detectors; the dispersal verdict comes from the
/// scattering detector in the diagnostics module.
SimStatus detect(const SimulationState& state, const DetectThresholds& thresholds);

}  // namespace inls
