#include "inls/grid3d.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace inls {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

std::shared_ptr<const Grid3D> Grid3D::make(int n, Real half_width) {
  if (n < 8 || (n & (n - 1)) != 0) throw std::invalid_argument("Grid3D: n must be a power of two >= 8");
  if (half_width <= 0) throw std::invalid_argument("Grid3D: half_width must be positive");

  auto g = std::shared_ptr<Grid3D>(new Grid3D);
  g->n_ = n;
  g->half_width_ = half_width;
  const Real h = 2.0 * half_width / n;
  g->h_ = h;

  // Half-cell offset keeps every node away from the origin.
  g->x_.resize(n);
  for (int i = 0; i < n; ++i) g->x_[i] = -half_width + (i + 0.5) * h;
  g->k_.resize(n);
  for (int i = 0; i < n; ++i) {
    const int m = (i <= n / 2 - 1) ? i : i - n;
    g->k_[i] = pi / half_width * m;
  }

  const long total = g->size();
  g->w_reg_.resize(total);
  g->rad_.resize(total);
  const Real cap = 2.0 / h;
  long idx = 0;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      for (int iz = 0; iz < n; ++iz, ++idx) {
        const Real r = std::sqrt(g->x_[ix] * g->x_[ix] + g->x_[iy] * g->x_[iy] +
                                 g->x_[iz] * g->x_[iz]);
        g->rad_[idx] = r;
        g->w_reg_[idx] = std::min(1.0 / r, cap);
      }

  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    std::vector<Complex> buf(total);
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    g->plan_fwd_ = fftw_plan_dft_3d(n, n, n, p, p, FFTW_FORWARD,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
    g->plan_bwd_ = fftw_plan_dft_3d(n, n, n, p, p, FFTW_BACKWARD,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!g->plan_fwd_ || !g->plan_bwd_) throw std::runtime_error("Grid3D: FFTW plan failed");
  }
  return g;
}

Grid3D::~Grid3D() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

bool Grid3D::axis_mode_kept(int i) const {
  const int m = (i <= n_ / 2 - 1) ? i : i - n_;
  return 3 * std::abs(m) <= n_;
}

void Grid3D::fft_forward(ArrayXc& a) const {
  auto* p = reinterpret_cast<fftw_complex*>(a.data());
  fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_), p, p);
}

void Grid3D::fft_backward(ArrayXc& a) const {
  auto* p = reinterpret_cast<fftw_complex*>(a.data());
  fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_), p, p);
}

}  // namespace inls
