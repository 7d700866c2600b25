#include "inls/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "inls/spectral.hpp"

namespace inls {

namespace {

Real h1dot_any(const ComplexField& f) {
  return f.is_radial() ? h1dot_norm_sq_sine(f) : h1dot_norm_sq(f);
}

Real h1dot_distance(const ComplexField& a, const ComplexField& b) {
  ComplexField diff = a.like(a.samples() - b.samples());
  return std::sqrt(h1dot_any(diff));
}

}  // namespace

void ScatteringDetector::add_sample(const SimulationState& state) {
  ComplexField psi = free_propagate(state.u, -state.time());
  if (times_.empty()) ref_h1_ = std::sqrt(h1dot_any(state.u));
  if (psi.is_radial()) {
    const RadialGrid& g = psi.radial_grid();
    const ArrayXc c = sine::analyze(g, radial_transform_in(psi));
    const ArrayXr k = sine::wavenumbers(g);
    const Real scale = std::sqrt(4.0 * pi * 0.5 * g.r_max());
    coeffs_.push_back(scale * k * c);
  }
  if (!times_.empty() && ref_h1_ > 0) {
    if (!coeffs_.empty() && coeffs_.size() >= 2) {
      const size_t m = coeffs_.size();
      last_dev_ = std::sqrt((coeffs_[m - 1] - coeffs_[m - 2]).abs2().sum()) / ref_h1_;
    } else {
      last_dev_ = h1dot_distance(psi, unwound_.back()) / ref_h1_;
    }
  }
  times_.push_back(state.elapsed);
  boundary_frac_.push_back(outer_mass_fraction(state.u));
  unwound_.push_back(std::move(psi));
}

ScatteringVerdict ScatteringDetector::verdict() const {
  ScatteringVerdict v;
  const int n = static_cast<int>(times_.size());
  const int window = std::max(2, static_cast<int>(std::ceil(opts_.trailing_window * n)));
  if (n < 2 || ref_h1_ <= 0) return v;
  v.determinable = true;

  const int start = n - std::min(window, n);
  Real worst = 0;
  for (int i = start; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Real d = coeffs_.empty() ? h1dot_distance(unwound_[i], unwound_[j])
                                     : std::sqrt((coeffs_[i] - coeffs_[j]).abs2().sum());
      worst = std::max(worst, d);
    }
  v.trailing_deviation = worst / ref_h1_;

  for (int i = start; i < n; ++i)
    if (boundary_frac_[i] > opts_.boundary_mass_frac) v.radiation_clean = false;

  v.dispersed = v.trailing_deviation < opts_.eps_scatter && v.radiation_clean;
  v.candidate = unwound_.back();
  return v;
}

void TimeAccumulator::add(Real t, Real integrand) {
  if (integrand < 0) throw std::invalid_argument("accumulator: negative integrand");
  if (have_prev_) value_ += 0.5 * (t - prev_t_) * (integrand + prev_f_);
  prev_t_ = t;
  prev_f_ = integrand;
  have_prev_ = true;
  times_.push_back(t);
  partial_.push_back(value_);
}

Real TimeAccumulator::trailing_increment_fraction(Real window) const {
  if (times_.size() < 2 || value_ <= 0) return 1.0;
  const Real t0 = times_.front();
  const Real t1 = times_.back();
  const Real cut = t1 - window * (t1 - t0);
  Real at_cut = 0;
  for (size_t i = 0; i < times_.size(); ++i)
    if (times_[i] <= cut) at_cut = partial_[i];
  return (value_ - at_cut) / value_;
}

ComplexField gaussian_field(std::shared_ptr<const RadialGrid> grid, Real amplitude, Real width) {
  const ArrayXr arg = (grid->nodes() / width).square();
  ArrayXc u(grid->size());
  u.real() = amplitude * (-arg).exp();
  u.imag().setZero();
  return ComplexField(std::move(grid), std::move(u));
}

ComplexField gaussian_field(std::shared_ptr<const Grid3D> grid, Real amplitude, Real width,
                            const Real center[3]) {
  const Grid3D& g = *grid;
  const int n = g.n();
  ArrayXc u(g.size());
  long idx = 0;
  for (int ix = 0; ix < n; ++ix) {
    const Real dx = g.axis_x()[ix] - center[0];
    for (int iy = 0; iy < n; ++iy) {
      const Real dy = g.axis_x()[iy] - center[1];
      for (int iz = 0; iz < n; ++iz, ++idx) {
        const Real dz = g.axis_x()[iz] - center[2];
        u[idx] = amplitude * std::exp(-(dx * dx + dy * dy + dz * dz) / (width * width));
      }
    }
  }
  return ComplexField(std::move(grid), std::move(u));
}

FarCenterResult far_center_deviation(std::shared_ptr<const Grid3D> grid,
                                     const FarCenterParams& params) {
  FarCenterResult res;
  ComplexField u0 = gaussian_field(grid, params.amplitude, params.width, params.center);
  const Real h1_0 = std::sqrt(h1dot_norm_sq(u0));
  if (h1_0 == 0) return res;  // zero amplitude: linear equals nonlinear

  SimulationState state = make_state(u0);
  StepParams sp;
  sp.dt = params.dt;
  sp.mu = params.mu;
  const long steps = std::lround(params.t_final / params.dt);
  for (long i = 0; i < steps && state.status == SimStatus::running; ++i) {
    strang_step(state, sp);
    if ((i & 7) == 7 || i == steps - 1) {
      const Real frac = outer_mass_fraction(state.u);
      res.boundary_mass = std::max(res.boundary_mass, frac);
      if (frac > params.boundary_mass_frac) {
        res.aborted = true;
        return res;
      }
    }
  }
  if (state.status == SimStatus::underresolved) {
    res.aborted = true;
    return res;
  }
  const ComplexField free_final = free_propagate(u0, state.time());
  res.deviation = h1dot_distance(state.u, free_final) / h1_0;
  return res;
}

}  // namespace inls
