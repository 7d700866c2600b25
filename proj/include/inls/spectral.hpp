#pragma once

#include "inls/radial_grid.hpp"
#include "inls/types.hpp"

namespace inls {

/// Sine-series (DST-I) analysis of v sampled at the interior nodes of a
/// uniform radial grid, with implicit Dirichlet zeros at r = 0 and r = r_max.
/// Coefficients c_k are those of v(r) = sum_k c_k sin(k*pi*r/r_max).
namespace sine {

/// Forward analysis: samples -> coefficients.
ArrayXc analyze(const RadialGrid& grid, const ArrayXc& v);
/// Synthesis: coefficients -> samples.
ArrayXc synthesize(const RadialGrid& grid, const ArrayXc& c);
/// Continuum wavenumber of mode k (1-based internally; array index 0 is k=1).
ArrayXr wavenumbers(const RadialGrid& grid);

/// Exact free flow of i v_t + v_rr = 0 over time t in the sine basis, with an
/// optional 2/3-rule mask applied to the coefficients.
void propagate(const RadialGrid& grid, ArrayXc& v, Real t, bool dealias = false);

}  // namespace sine
}  // namespace inls
