#include "inls/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "inls/spectral.hpp"

namespace inls {

const char* to_string(SimStatus s) {
  switch (s) {
    case SimStatus::running: return "running";
    case SimStatus::dispersed: return "dispersed";
    case SimStatus::blowup_suspected: return "blowup_suspected";
    case SimStatus::underresolved: return "underresolved";
    case SimStatus::time_exhausted: return "time_exhausted";
  }
  return "?";
}

SimulationState make_state(ComplexField u0, int direction) {
  SimulationState st{std::move(u0)};
  st.direction = direction >= 0 ? +1 : -1;
  st.initial_h1 = std::sqrt(st.u.is_radial() ? h1dot_norm_sq_sine(st.u) : h1dot_norm_sq(st.u));
  return st;
}

namespace {

void box_spectral_pass(const Grid3D& g, ArrayXc& u, Real t, bool dealias) {
  g.fft_forward(u);
  const int n = g.n();
  const Real norm = 1.0 / static_cast<Real>(g.size());
  // e^{-i t |k|^2} factorizes over axes
  ArrayXc phase(n);
  for (int i = 0; i < n; ++i) {
    const Real k2 = g.axis_k()[i] * g.axis_k()[i];
    phase[i] = std::polar(1.0, -t * k2);
  }
  long idx = 0;
  for (int ix = 0; ix < n; ++ix) {
    const bool kx_ok = g.axis_mode_kept(ix);
    const Complex px = phase[ix] * norm;
    for (int iy = 0; iy < n; ++iy) {
      const bool ky_ok = kx_ok && g.axis_mode_kept(iy);
      const Complex pxy = px * phase[iy];
      for (int iz = 0; iz < n; ++iz, ++idx) {
        if (dealias && !(ky_ok && g.axis_mode_kept(iz)))
          u[idx] = Complex(0, 0);
        else
          u[idx] *= pxy * phase[iz];
      }
    }
  }
  g.fft_backward(u);
}

}  // namespace

ComplexField free_propagate(const ComplexField& f, Real t) {
  if (f.is_radial()) {
    const RadialGrid& g = f.radial_grid();
    ArrayXc v = g.nodes() * f.samples();
    sine::propagate(g, v, t, /*dealias=*/false);
    return f.like(v / g.nodes());
  }
  ArrayXc u = f.samples();
  box_spectral_pass(f.box_grid(), u, t, /*dealias=*/false);
  return f.like(std::move(u));
}

namespace {

void apply_phase(const ComplexField& meta, ArrayXc& u, Real factor) {
  ArrayXr theta;
  if (meta.is_radial())
    theta = factor * u.abs2() / meta.radial_grid().nodes();
  else
    theta = factor * u.abs2() * meta.box_grid().weight();
  for (long i = 0; i < u.size(); ++i) u[i] *= std::polar(1.0, theta[i]);
}

}  // namespace

ComplexField nonlinear_phase_step(const ComplexField& f, Real tau, int mu) {
  ArrayXc u = f.samples();
  apply_phase(f, u, mu * tau);
  return f.like(std::move(u));
}

void strang_step(SimulationState& state, const StepParams& params) {
  if (state.status != SimStatus::running) return;
  if (params.dt <= 0) throw std::invalid_argument("strang_step: dt must be positive");
  const Real dt = state.direction * params.dt;

  ArrayXc& u = state.u.samples();
  apply_phase(state.u, u, params.mu * 0.5 * dt);
  if (state.u.is_radial()) {
    const RadialGrid& g = state.u.radial_grid();
    ArrayXc v = g.nodes() * u;
    sine::propagate(g, v, dt, params.dealias);
    u = v / g.nodes();
  } else {
    box_spectral_pass(state.u.box_grid(), u, dt, params.dealias);
  }
  apply_phase(state.u, u, params.mu * 0.5 * dt);

  state.elapsed += params.dt;
  ++state.steps;
  if (!u.allFinite()) state.advance_status(SimStatus::underresolved);
}

ArrayXc radial_transform_in(const ComplexField& u) {
  if (!u.is_radial()) throw std::invalid_argument("radial_transform_in: radial field required");
  return u.radial_grid().nodes() * u.samples();
}

ComplexField radial_transform_out(const ComplexField& like, const ArrayXc& v) {
  return like.like(v / like.radial_grid().nodes());
}

Real h1dot_norm_sq_sine(const ComplexField& u) {
  const RadialGrid& g = u.radial_grid();
  const ArrayXc c = sine::analyze(g, radial_transform_in(u));
  const ArrayXr k = sine::wavenumbers(g);
  return 4.0 * pi * 0.5 * g.r_max() * (k.square() * c.abs2()).sum();
}

Real spectral_fill_fraction(const ComplexField& u) {
  if (u.is_radial()) {
    const RadialGrid& g = u.radial_grid();
    const ArrayXc c = sine::analyze(g, radial_transform_in(u));
    const ArrayXr k = sine::wavenumbers(g);
    const int n = g.size();
    const int cutoff = (2 * n) / 3;
    Real total = 0, high = 0;
    for (int i = 0; i < n; ++i) {
      const Real d = k[i] * k[i] * std::norm(c[i]);
      total += d;
      if (i >= cutoff) high += d;
    }
    return total > 0 ? high / total : 0.0;
  }
  const Grid3D& g = u.box_grid();
  ArrayXc hat = u.samples();
  g.fft_forward(hat);
  const int n = g.n();
  Real total = 0, high = 0;
  long idx = 0;
  for (int ix = 0; ix < n; ++ix) {
    const Real kx2 = g.axis_k()[ix] * g.axis_k()[ix];
    const bool okx = g.axis_mode_kept(ix);
    for (int iy = 0; iy < n; ++iy) {
      const Real ky2 = kx2 + g.axis_k()[iy] * g.axis_k()[iy];
      const bool oky = okx && g.axis_mode_kept(iy);
      for (int iz = 0; iz < n; ++iz, ++idx) {
        const Real d = (ky2 + g.axis_k()[iz] * g.axis_k()[iz]) * std::norm(hat[idx]);
        total += d;
        if (!(oky && g.axis_mode_kept(iz))) high += d;
      }
    }
  }
  return total > 0 ? high / total : 0.0;
}

SimStatus detect(const SimulationState& state, const DetectThresholds& thresholds) {
  if (state.status != SimStatus::running) return state.status;
  if (!all_finite(state.u)) return SimStatus::underresolved;
  const Real h1 = std::sqrt(state.u.is_radial() ? h1dot_norm_sq_sine(state.u)
                                                : h1dot_norm_sq(state.u));
  if (state.initial_h1 > 0 && h1 > thresholds.growth_factor * state.initial_h1)
    return SimStatus::blowup_suspected;
  if (spectral_fill_fraction(state.u) > thresholds.spectral_fill)
    return SimStatus::underresolved;
  return SimStatus::running;
}

}  // namespace inls
