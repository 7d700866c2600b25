#pragma once

#include <memory>
#include <stdexcept>
#include <utility>

#include "inls/grid3d.hpp"
#include "inls/radial_grid.hpp"
#include "inls/types.hpp"

namespace inls {

/// Complex-valued state sampled on a grid (radial or 3-D box).
/// Fields behave as immutable values from the caller's perspective: all
/// operations return new fields, so concurrent use on distinct fields is safe.
class ComplexField {
 public:
  ComplexField(std::shared_ptr<const RadialGrid> grid, ArrayXc samples)
      : radial_(std::move(grid)), u_(std::move(samples)) {
    if (u_.size() != radial_->size()) throw std::invalid_argument("field/grid size mismatch");
  }
  ComplexField(std::shared_ptr<const Grid3D> grid, ArrayXc samples)
      : box_(std::move(grid)), u_(std::move(samples)) {
    if (u_.size() != box_->size()) throw std::invalid_argument("field/grid size mismatch");
  }

  bool is_radial() const { return static_cast<bool>(radial_); }
  const RadialGrid& radial_grid() const { return *radial_; }
  const Grid3D& box_grid() const { return *box_; }
  std::shared_ptr<const RadialGrid> radial_grid_ptr() const { return radial_; }
  std::shared_ptr<const Grid3D> box_grid_ptr() const { return box_; }

  const ArrayXc& samples() const { return u_; }
  ArrayXc& samples() { return u_; }

  ComplexField like(ArrayXc samples) const {
    return radial_ ? ComplexField(radial_, std::move(samples))
                   : ComplexField(box_, std::move(samples));
  }
  ComplexField zero_like() const { return like(ArrayXc::Zero(u_.size())); }

 private:
  std::shared_ptr<const RadialGrid> radial_;
  std::shared_ptr<const Grid3D> box_;
  ArrayXc u_;
};

/// Weighted integrand selector for integrals of the form |x|^{-s} |u|^q.
/// Only the four pairs used by the analysis are admitted:
///   (0,2) mass, (1,4) potential P(u), (2,2) Hardy term, (3,4) virial remainder.
struct WeightedNormSpec {
  int weight_exponent = 0;  // s
  int field_exponent = 2;   // q

  WeightedNormSpec(int s, int q) : weight_exponent(s), field_exponent(q) {
    const bool ok = (s == 0 && q == 2) || (s == 1 && q == 4) || (s == 2 && q == 2) ||
                    (s == 3 && q == 4);
    if (!ok) throw std::invalid_argument("unsupported (s,q) weight/field exponent pair");
  }
};

bool all_finite(const ComplexField& f);

}  // namespace inls
