#include "inls/ops.hpp"

#include <cmath>
#include <stdexcept>

namespace inls {

namespace {

ArrayXr abs2(const ArrayXc& u) { return u.abs2(); }

// |x|^{-s} at box nodes with the (h/2)^{-s} cap folded in.
ArrayXr box_weight_pow(const Grid3D& g, int s) {
  if (s == 0) return ArrayXr::Ones(g.size());
  if (s == 1) return g.weight();
  return g.weight().pow(s);
}

}  // namespace

bool all_finite(const ComplexField& f) { return f.samples().allFinite(); }

std::vector<ComplexField> gradient(const ComplexField& f) {
  std::vector<ComplexField> out;
  if (f.is_radial()) {
    out.push_back(f.like(f.radial_grid().derivative(f.samples())));
    return out;
  }
  const Grid3D& g = f.box_grid();
  const int n = g.n();
  ArrayXc hat = f.samples();
  g.fft_forward(hat);
  const Real norm = 1.0 / static_cast<Real>(g.size());
  for (int axis = 0; axis < 3; ++axis) {
    ArrayXc comp = hat;
    long idx = 0;
    for (int ix = 0; ix < n; ++ix)
      for (int iy = 0; iy < n; ++iy)
        for (int iz = 0; iz < n; ++iz, ++idx) {
          const Real k = axis == 0 ? g.axis_k()[ix] : (axis == 1 ? g.axis_k()[iy] : g.axis_k()[iz]);
          comp[idx] *= Complex(0.0, k * norm);
        }
    g.fft_backward(comp);
    out.push_back(f.like(std::move(comp)));
  }
  return out;
}

IntegralResult weighted_integral(const ComplexField& f, const WeightedNormSpec& spec) {
  const int s = spec.weight_exponent;
  const int q = spec.field_exponent;
  IntegralResult res;
  if (f.is_radial()) {
    const RadialGrid& g = f.radial_grid();
    ArrayXr dens = abs2(f.samples());
    if (q == 4) dens = dens.square();
    if (s > 0) dens *= g.nodes().pow(-s);
    res.value = (g.weights() * dens).sum();
    res.tail_fraction = g.tail_weight_fraction(dens);
    const Real thresh = g.layout() == RadialGrid::Layout::mapped_gl ? 0.5 : 0.05;
    res.slow_decay = res.tail_fraction > thresh;
    return res;
  }
  const Grid3D& g = f.box_grid();
  ArrayXr dens = abs2(f.samples());
  if (q == 4) dens = dens.square();
  dens *= box_weight_pow(g, s);
  const Real dv = g.cell_volume();
  res.value = dv * dens.sum();
  const Real shell = 0.9 * g.half_width();
  Real tail = 0;
  for (long i = 0; i < dens.size(); ++i)
    if (g.radius()[i] > shell) tail += dens[i];
  res.tail_fraction = res.value > 0 ? dv * tail / res.value : 0.0;
  res.slow_decay = res.tail_fraction > 0.05;
  return res;
}

Real h1dot_norm_sq(const ComplexField& f) {
  if (f.is_radial()) {
    const RadialGrid& g = f.radial_grid();
    const ArrayXc du = g.derivative(f.samples());
    return (g.weights() * du.abs2()).sum();
  }
  const Grid3D& g = f.box_grid();
  const int n = g.n();
  ArrayXc hat = f.samples();
  g.fft_forward(hat);
  Real acc = 0;
  long idx = 0;
  for (int ix = 0; ix < n; ++ix) {
    const Real kx2 = g.axis_k()[ix] * g.axis_k()[ix];
    for (int iy = 0; iy < n; ++iy) {
      const Real ky2 = g.axis_k()[iy] * g.axis_k()[iy];
      for (int iz = 0; iz < n; ++iz, ++idx) {
        const Real kz2 = g.axis_k()[iz] * g.axis_k()[iz];
        acc += (kx2 + ky2 + kz2) * std::norm(hat[idx]);
      }
    }
  }
  return acc * g.cell_volume() / static_cast<Real>(g.size());
}

Real hardy_ratio(const ComplexField& f) {
  const Real denom = h1dot_norm_sq(f);
  if (denom <= 0) throw std::invalid_argument("hardy_ratio: zero field");
  return weighted_integral(f, WeightedNormSpec(2, 2)).value / denom;
}

Real mass(const ComplexField& f) { return weighted_integral(f, WeightedNormSpec(0, 2)).value; }

Real lp_norm_pow(const ComplexField& f, Real p) {
  const ArrayXr dens = f.samples().abs().pow(p);
  if (f.is_radial()) return (f.radial_grid().weights() * dens).sum();
  return f.box_grid().cell_volume() * dens.sum();
}

Real grad_l30_11_norm(const ComplexField& f) {
  const auto grad = gradient(f);
  ArrayXr mag2 = grad[0].samples().abs2();
  for (size_t j = 1; j < grad.size(); ++j) mag2 += grad[j].samples().abs2();
  const Real p = 30.0 / 11.0;
  const ArrayXr dens = mag2.pow(0.5 * p);
  Real integral;
  if (f.is_radial())
    integral = (f.radial_grid().weights() * dens).sum();
  else
    integral = f.box_grid().cell_volume() * dens.sum();
  return std::pow(integral, 1.0 / p);
}

Real outer_mass_fraction(const ComplexField& f, Real frac) {
  const ArrayXr dens = f.samples().abs2();
  Real total = 0, outer = 0;
  if (f.is_radial()) {
    const RadialGrid& g = f.radial_grid();
    const Real edge = frac * g.r_max();
    for (int i = 0; i < g.size(); ++i) {
      const Real c = g.weights()[i] * dens[i];
      total += c;
      if (g.nodes()[i] > edge) outer += c;
    }
  } else {
    const Grid3D& g = f.box_grid();
    const Real edge = frac * g.half_width();
    for (long i = 0; i < dens.size(); ++i) {
      total += dens[i];
      if (g.radius()[i] > edge) outer += dens[i];
    }
  }
  return total > 0 ? outer / total : 0.0;
}

}  // namespace inls
