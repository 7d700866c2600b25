#include "inls/virial.hpp"

#include <cmath>
#include <stdexcept>

namespace inls {

VirialWeight::Derivs VirialWeight::eval(Real r) const {
  if (pure_ || r <= radius_) return {r * r, 2.0 * r, 2.0, 0.0, 0.0};
  const Real R = radius_;
  if (r > 2.0 * R) return {2.5 * R * R, 0.0, 0.0, 0.0, 0.0};
  // quintic blend p(s) = 1 + 2s + s^2 - 3.5 s^4 + 2 s^5, s = (r-R)/R;
  // p(1) = 5/2 gives the plateau constant.
  const Real s = (r - R) / R;
  const Real s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
  Derivs d;
  d.a = R * R * (1.0 + 2.0 * s + s2 - 3.5 * s4 + 2.0 * s5);
  d.d1 = R * (2.0 + 2.0 * s - 14.0 * s3 + 10.0 * s4);
  d.d2 = 2.0 - 42.0 * s2 + 40.0 * s3;
  d.d3 = (-84.0 * s + 120.0 * s2) / R;
  d.d4 = (-84.0 + 240.0 * s) / R / R;
  return d;
}

Real virial_quantity(const ComplexField& f, const VirialWeight& weight) {
  if (f.is_radial()) {
    const RadialGrid& g = f.radial_grid();
    const ArrayXc du = g.derivative(f.samples());
    Real acc = 0;
    for (int i = 0; i < g.size(); ++i) {
      const Real a1 = weight.eval(g.nodes()[i]).d1;
      acc += g.weights()[i] * a1 * std::imag(std::conj(f.samples()[i]) * du[i]);
    }
    return 2.0 * acc;
  }
  const Grid3D& g = f.box_grid();
  const auto grad = gradient(f);
  const int n = g.n();
  Real acc = 0;
  long idx = 0;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      for (int iz = 0; iz < n; ++iz, ++idx) {
        const Real r = g.radius()[idx];
        const Real a1_over_r = weight.eval(r).d1 / r;
        const Complex ub = std::conj(f.samples()[idx]);
        const Real dot = std::imag(ub * grad[0].samples()[idx]) * g.axis_x()[ix] +
                         std::imag(ub * grad[1].samples()[idx]) * g.axis_x()[iy] +
                         std::imag(ub * grad[2].samples()[idx]) * g.axis_x()[iz];
        acc += a1_over_r * dot;
      }
  return 2.0 * acc * g.cell_volume();
}

Real virial_rate(const ComplexField& f, const VirialWeight& weight) {
  if (f.is_radial()) {
    const RadialGrid& g = f.radial_grid();
    const ArrayXc du = g.derivative(f.samples());
    Real acc = 0;
    for (int i = 0; i < g.size(); ++i) {
      const Real r = g.nodes()[i];
      const auto a = weight.eval(r);
      const Real mod2 = std::norm(f.samples()[i]);
      const Real mod4 = mod2 * mod2;
      const Real grad2 = std::norm(du[i]);
      const Real bilap = a.d4 + 4.0 * a.d3 / r;
      acc += g.weights()[i] * (4.0 * a.d2 * grad2 - mod2 * bilap -
                               (mod4 / r) * (a.d2 + 2.0 * a.d1 / r) - mod4 * a.d1 / (r * r));
    }
    return acc;
  }
  const Grid3D& g = f.box_grid();
  const auto grad = gradient(f);
  const int n = g.n();
  Real acc = 0;
  long idx = 0;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      for (int iz = 0; iz < n; ++iz, ++idx) {
        const Real r = g.radius()[idx];
        const auto a = weight.eval(r);
        const Complex gx = grad[0].samples()[idx];
        const Complex gy = grad[1].samples()[idx];
        const Complex gz = grad[2].samples()[idx];
        const Real grad2 = std::norm(gx) + std::norm(gy) + std::norm(gz);
        const Complex xdotg =
            g.axis_x()[ix] * gx + g.axis_x()[iy] * gy + g.axis_x()[iz] * gz;
        const Real radial2 = std::norm(xdotg) / (r * r);
        const Real mod2 = std::norm(f.samples()[idx]);
        const Real mod4 = mod2 * mod2;
        const Real w1 = g.weight()[idx];  // regularized 1/|x|
        const Real bilap = a.d4 + 4.0 * a.d3 / r;
        acc += 4.0 * ((a.d2 - a.d1 / r) * radial2 + (a.d1 / r) * grad2) - mod2 * bilap -
               w1 * mod4 * (a.d2 + 2.0 * a.d1 / r) - w1 * w1 * mod4 * r * a.d1 * w1;
      }
  return acc * g.cell_volume();
}

TailIntegrals tightness_tail(const ComplexField& f, Real radius) {
  TailIntegrals out;
  if (f.is_radial()) {
    const RadialGrid& g = f.radial_grid();
    const ArrayXc du = g.derivative(f.samples());
    for (int i = 0; i < g.size(); ++i) {
      const Real r = g.nodes()[i];
      if (r <= radius) continue;
      const Real w = g.weights()[i];
      const Real mod2 = std::norm(f.samples()[i]);
      out.grad += w * std::norm(du[i]);
      out.potential += w * mod2 * mod2 / r;
      out.hardy += w * mod2 / (r * r);
    }
    return out;
  }
  const Grid3D& g = f.box_grid();
  const auto grad = gradient(f);
  for (long i = 0; i < g.size(); ++i) {
    if (g.radius()[i] <= radius) continue;
    const Real mod2 = std::norm(f.samples()[i]);
    const Real w1 = g.weight()[i];
    out.grad += std::norm(grad[0].samples()[i]) + std::norm(grad[1].samples()[i]) +
                std::norm(grad[2].samples()[i]);
    out.potential += w1 * mod2 * mod2;
    out.hardy += w1 * w1 * mod2;
  }
  const Real dv = g.cell_volume();
  out.grad *= dv;
  out.potential *= dv;
  out.hardy *= dv;
  return out;
}

Real tightness_radius(const ComplexField& f, Real coverage) {
  const TailIntegrals total = tightness_tail(f, 0.0);
  const Real extent = f.is_radial() ? f.radial_grid().r_max() : f.box_grid().half_width();
  if (total.sum() <= 0) return 0.0;
  Real lo = 0.0, hi = extent;
  for (int it = 0; it < 60; ++it) {
    const Real mid = 0.5 * (lo + hi);
    const TailIntegrals t = tightness_tail(f, mid);
    const bool covered = t.grad <= (1.0 - coverage) * total.grad &&
                         t.potential <= (1.0 - coverage) * total.potential &&
                         t.hardy <= (1.0 - coverage) * total.hardy;
    if (covered) hi = mid;
    else lo = mid;
    if (hi - lo < 1e-3 * extent) break;
  }
  return hi;
}

}  // namespace inls
