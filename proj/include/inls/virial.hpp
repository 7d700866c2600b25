#pragma once

#include "inls/fields.hpp"
#include "inls/ops.hpp"

namespace inls {

/// Localized virial weight: a(x) = |x|^2 for |x| <= R, a quintic blend on
/// R < |x| <= 2R matching value/first/second derivatives at both ends, and
/// the plateau a = C R^2 beyond 2R with C = 5/2 fixed by continuity.  All
/// derivatives obey |d^m a| <~ R^{2-m} in the blend region.  The `pure`
/// weight is a(x) = |x|^2 everywhere.
class VirialWeight {
 public:
  static VirialWeight pure() { return VirialWeight(0, true); }
  static VirialWeight localized(Real radius) { return VirialWeight(radius, false); }

  bool is_pure() const { return pure_; }
  Real radius() const { return radius_; }
  Real plateau_constant() const { return 2.5; }

  struct Derivs {
    Real a, d1, d2, d3, d4;
  };
  Derivs eval(Real r) const;

 private:
  VirialWeight(Real radius, bool pure) : radius_(radius), pure_(pure) {}
  Real radius_ = 0;
  bool pure_ = false;
};

/// M_a = 2 Im integral of conj(u) u_j a_j dx.
Real virial_quantity(const ComplexField& f, const VirialWeight& weight);

/// dM_a/dt assembled from the four terms
///   4 Re a_{jk} conj(u_j) u_k - |u|^2 a_{jjkk} - |x|^{-1}|u|^4 a_{jj}
///   - |x|^{-3}|u|^4 x_j a_j,
/// with exact weight derivatives.  For the pure weight this reduces to
/// 8 * integral (|grad u|^2 - |x|^{-1}|u|^4) dx.
Real virial_rate(const ComplexField& f, const VirialWeight& weight);

struct TailIntegrals {
  Real grad = 0;       // integral_{|x|>R} |grad u|^2
  Real potential = 0;  // integral_{|x|>R} |x|^{-1} |u|^4
  Real hardy = 0;      // integral_{|x|>R} |x|^{-2} |u|^2
  Real sum() const { return grad + potential + hardy; }
};

TailIntegrals tightness_tail(const ComplexField& f, Real radius);

/// Smallest grid radius containing the given fraction of all three tightness
/// components (full grid extent if the fraction is never reached).
Real tightness_radius(const ComplexField& f, Real coverage = 0.99);

}  // namespace inls
