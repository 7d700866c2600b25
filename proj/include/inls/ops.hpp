#pragma once

#include <vector>

#include "inls/fields.hpp"

namespace inls {

/// Result of a grid quadrature that may fail to capture a slowly decaying
/// integrand.  `value` is the truncated quadrature; `slow_decay` is set when
/// the outermost nodes still carry a non-negligible share of the sum.
struct IntegralResult {
  Real value = 0;
  Real tail_fraction = 0;
  bool slow_decay = false;
};

/// Spectral gradient on the box (exact for band-limited data); five-point
/// finite differences in the mapped coordinate on radial grids.  Returns one
/// component for radial fields, three for box fields.
std::vector<ComplexField> gradient(const ComplexField& f);

/// integral of |x|^{-s} |u|^q dx by grid quadrature.  On the box the origin
/// cell uses the regularized weight min(|x|^{-s}, (h/2)^{-s}).
IntegralResult weighted_integral(const ComplexField& f, const WeightedNormSpec& spec);

/// integral of |grad u|^2 dx: Fourier multipliers on the box, quadrature of
/// the finite-difference derivative on radial grids.
Real h1dot_norm_sq(const ComplexField& f);

/// || |x|^{-1} u ||_{L2}^2 / ||grad u||_{L2}^2; bounded by the sharp 3-D
/// Hardy constant 4 up to quadrature tolerance.  Throws on the zero field.
Real hardy_ratio(const ComplexField& f);

Real mass(const ComplexField& f);                    // integral of |u|^2
Real lp_norm_pow(const ComplexField& f, Real p);     // integral of |u|^p
/// || grad u ||_{L^{30/11}} (instantaneous Strichartz-type diagnostic).
Real grad_l30_11_norm(const ComplexField& f);

/// integral of |u|^2 over the outer shell (r > frac * r_extent); used by the
/// boundary-radiation monitors.
Real outer_mass_fraction(const ComplexField& f, Real frac = 0.9);

}  // namespace inls
