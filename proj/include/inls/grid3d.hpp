#pragma once

#include <memory>

#include "inls/types.hpp"

namespace inls {

/// Periodic box [-L, L)^3 with n points per axis (n a power of two), offset
/// by half a cell so no node coincides with the origin.  Carries the Fourier
/// multipliers |k|^2 for the Laplacian and the 2/3-rule dealiasing mask.
class Grid3D {
 public:
  static std::shared_ptr<const Grid3D> make(int n, Real half_width);
  ~Grid3D();

  Grid3D(const Grid3D&) = delete;
  Grid3D& operator=(const Grid3D&) = delete;

  int n() const { return n_; }
  long size() const { return static_cast<long>(n_) * n_ * n_; }
  Real half_width() const { return half_width_; }
  Real cell() const { return h_; }
  Real cell_volume() const { return h_ * h_ * h_; }

  const ArrayXr& axis_x() const { return x_; }   // node coordinate per axis index
  const ArrayXr& axis_k() const { return k_; }   // wavenumber per axis index
  /// Regularized nonlinearity weight min(1/|x|, 2/h) at every node.
  const ArrayXr& weight() const { return w_reg_; }
  /// |x| at every node (flattened (ix*n + iy)*n + iz).
  const ArrayXr& radius() const { return rad_; }

  long index(int ix, int iy, int iz) const {
    return (static_cast<long>(ix) * n_ + iy) * n_ + iz;
  }

  bool axis_mode_kept(int i) const;  // 2/3-rule per-axis keep decision

  // Unnormalized FFTW transforms; inverse = backward / n^3.
  void fft_forward(ArrayXc& a) const;
  void fft_backward(ArrayXc& a) const;

 private:
  Grid3D() = default;

  int n_ = 0;
  Real half_width_ = 0;
  Real h_ = 0;
  ArrayXr x_, k_;
  ArrayXr w_reg_, rad_;
  void* plan_fwd_ = nullptr;
  void* plan_bwd_ = nullptr;
};

}  // namespace inls
