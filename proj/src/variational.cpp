#include "inls/variational.hpp"

#include <cmath>
#include <limits>

namespace inls {

Real energy(const ComplexField& f, int mu) {
  const Real kin = h1dot_norm_sq(f);
  const Real pot = weighted_integral(f, WeightedNormSpec(1, 4)).value;
  return 0.5 * kin - mu * 0.25 * pot;
}

bool subthreshold(const ComplexField& f) {
  const Real kin = h1dot_norm_sq(f);
  if (kin >= kinetic_Q) return false;
  const Real pot = weighted_integral(f, WeightedNormSpec(1, 4)).value;
  return 0.5 * kin - 0.25 * pot < energy_Q;
}

TrappingCheck trapping_check(const ComplexField& f) {
  TrappingCheck out;
  const Real kin = h1dot_norm_sq(f);
  const Real pot = weighted_integral(f, WeightedNormSpec(1, 4)).value;
  const Real e = 0.5 * kin - 0.25 * pot;
  out.precondition_ok = kin < kinetic_Q && e < energy_Q;
  out.ratio = kin > 0 ? e / kin : 0.5;
  out.holds = out.ratio >= 0.25;
  return out;
}

CoercivityMargin coercivity_margin(const ComplexField& f) {
  CoercivityMargin out;
  const Real kin = h1dot_norm_sq(f);
  const Real pot = weighted_integral(f, WeightedNormSpec(1, 4)).value;
  out.margin = kin - pot;
  out.delta_bound = 1.0 - sharp_C1 * kin;
  if (kin <= 0) {
    out.defined = false;
    out.fraction = std::numeric_limits<Real>::quiet_NaN();
    return out;
  }
  out.fraction = out.margin / kin;
  return out;
}

VariationalReport variational_report(const ComplexField& f, int mu) {
  VariationalReport rep;
  rep.mass = mass(f);
  rep.kinetic = h1dot_norm_sq(f);
  rep.potential = weighted_integral(f, WeightedNormSpec(1, 4)).value;
  rep.energy = 0.5 * rep.kinetic - mu * 0.25 * rep.potential;
  rep.subthreshold = mu > 0 && rep.kinetic < kinetic_Q && rep.energy < energy_Q;
  rep.trapping_ratio = rep.kinetic > 0 ? rep.energy / rep.kinetic : 0.5;
  rep.coercivity_margin = rep.kinetic - rep.potential;
  rep.margin_fraction = rep.kinetic > 0 ? rep.coercivity_margin / rep.kinetic : 0.0;
  return rep;
}

}  // namespace inls
