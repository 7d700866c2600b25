#pragma once

#include "inls/fields.hpp"
#include "inls/ops.hpp"

namespace inls {

/// Variational snapshot of a state: conserved quantities, threshold
/// classification against the hard-coded ground-state constants 2*pi/3 and
/// 8*pi/3, and the sharp-inequality coercivity margin.
struct VariationalReport {
  Real mass = 0;
  Real kinetic = 0;    // ||u||_{dot H1}^2
  Real potential = 0;  // P(u) = || |x|^{-1} |u|^4 ||_1
  Real energy = 0;     // kinetic/2 - mu*potential/4, exactly as computed
  bool subthreshold = false;
  Real trapping_ratio = 0;     // energy / kinetic
  Real coercivity_margin = 0;  // kinetic - potential
  Real margin_fraction = 0;    // margin / kinetic
};

Real energy(const ComplexField& f, int mu);

/// Strict inequalities E(u) < E(Q) and ||u||_{dot H1} < ||Q||_{dot H1}
/// against the exact constants (focusing context).
bool subthreshold(const ComplexField& f);

struct TrappingCheck {
  bool precondition_ok = false;  // subthreshold(f)
  bool holds = false;            // E >= kinetic / 4
  Real ratio = 0;                // E / kinetic
};

/// Energy-trapping bound E(u) >= kinetic/4 for sub-threshold states;
/// precondition failures are reported in the result, not thrown.
TrappingCheck trapping_check(const ComplexField& f);

struct CoercivityMargin {
  Real margin = 0;       // kinetic - potential
  Real fraction = 0;     // margin / kinetic
  Real delta_bound = 0;  // 1 - (3/(8 pi)) * kinetic
  bool defined = true;   // false for the zero field
};

/// Sharp-inequality consequence: fraction >= delta_bound for every field,
/// with equality exactly on rescaled ground states.
CoercivityMargin coercivity_margin(const ComplexField& f);

VariationalReport variational_report(const ComplexField& f, int mu);

}  // namespace inls
