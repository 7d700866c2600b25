#pragma once

#include "inls/fields.hpp"
#include "inls/ops.hpp"

namespace inls {

/// The explicit ground state Q(x) = (1 + |x|/2)^{-1}: the positive stationary
/// solution of Delta Q + |x|^{-1} Q^3 = 0, with Q(0) = 1 and 0 < Q <= 1.
struct GroundState {
  static Real value(Real r) { return 1.0 / (1.0 + 0.5 * r); }
};

ComplexField evaluate_Q(std::shared_ptr<const RadialGrid> grid);
ComplexField evaluate_Q(std::shared_ptr<const Grid3D> grid);

/// factor * lambda^{-1/2} Q(r/lambda) as initial data.  On uniform (solver)
/// grids the slow 1/r tail is tapered smoothly to zero over the outer quarter
/// of the domain so the datum is compatible with the Dirichlet wall.
ComplexField rescaled_q_field(std::shared_ptr<const RadialGrid> grid, Real factor, Real lambda);

/// The symmetry g f(x) = lambda^{-1/2} f((x - x0)/lambda).  Both the L2-dot
/// and the potential functional are invariant under it.
struct RescaleTranslate {
  Real lambda = 1.0;
  Real center[3] = {0, 0, 0};
};

struct RescaleResult {
  ComplexField field;
  Real h1_loss_fraction = 0;   // Dot-H1 mass lost outside the grid
  bool out_of_domain = false;  // set when the loss exceeds 1%
};

/// Cubic (4-point Lagrange) interpolation of the source samples onto the
/// target grid of the same kind; values beyond the source extent are zero.
RescaleResult apply_rescale_translate(const RescaleTranslate& op, const ComplexField& f);

/// sup over nodes with r in [r_lo, 0.9 r_max] of |Delta Q + r^{-1} Q^3| using
/// second-order three-point stencils; decays like h^2 under refinement.  The
/// band excludes the axis neighborhood where the (2/r) d_r stencil amplifies
/// truncation error.
Real elliptic_residual(const RadialGrid& grid, Real r_lo = 1.0);

/// Weinstein quotient J(f) = || |x|^{-1} |f|^4 ||_{L1} / ||grad f||_{L2}^4.
Real weinstein_quotient(const ComplexField& f);

struct AscentResult {
  Real value = 0;  // quotient at the last iterate
  bool converged = false;
  int iterations = 0;
};

struct AscentOptions {
  int max_iterations = 50000;
  Real improvement_tol = 1e-9;  // over a 50-iteration window
  int window = 50;
};

/// Projected gradient ascent of the Weinstein quotient on the unit Dot-H1
/// sphere over radial trial fields, with backtracking line search.  The
/// maximum is the sharp embedding constant C1 = 3/(8 pi).
AscentResult sharp_constant_via_optimization(std::shared_ptr<const RadialGrid> grid,
                                             const ArrayXr& initial,
                                             const AscentOptions& opts = {});
AscentResult sharp_constant_via_optimization();

struct GroundStateConstants {
  Real kinetic = 0;    // ||grad Q||^2,   exact 8 pi / 3
  Real potential = 0;  // || |x|^{-1} Q^4 ||_1, exact 8 pi / 3
  Real energy = 0;     // E(Q),           exact 2 pi / 3
  Real c1 = 0;         // J(Q),           exact 3 / (8 pi)
};

GroundStateConstants ground_state_constants(std::shared_ptr<const RadialGrid> grid);
GroundStateConstants ground_state_constants();

}  // namespace inls
