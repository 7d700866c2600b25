#include "inls/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace inls {
namespace sine {

namespace {

struct DstPlan {
  fftw_plan plan = nullptr;
};

// RODFT00 plans are reused per transform length; creation is serialized,
// execution through the new-array interface is thread safe.
fftw_plan dst_plan(int n) {
  static std::map<int, DstPlan> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<Real> buf(n);
    fftw_plan p = fftw_plan_r2r_1d(n, buf.data(), buf.data(), FFTW_RODFT00,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw std::runtime_error("DST plan failed");
    it = cache.emplace(n, DstPlan{p}).first;
  }
  return it->second.plan;
}

void require_uniform(const RadialGrid& grid) {
  if (grid.layout() != RadialGrid::Layout::uniform)
    throw std::invalid_argument("sine transform requires a uniform radial grid");
}

// FFTW RODFT00 computes Y_k = 2 sum_j x_j sin(pi (j+1)(k+1)/(n+1)); applying
// it twice multiplies by 2(n+1).
void dst_pair(int n, ArrayXr& re, ArrayXr& im) {
  fftw_plan p = dst_plan(n);
  fftw_execute_r2r(p, re.data(), re.data());
  fftw_execute_r2r(p, im.data(), im.data());
}

}  // namespace

ArrayXc analyze(const RadialGrid& grid, const ArrayXc& v) {
  require_uniform(grid);
  const int n = grid.size();
  ArrayXr re = v.real(), im = v.imag();
  dst_pair(n, re, im);
  ArrayXc c(n);
  const Real scale = 1.0 / (n + 1);  // c_k = Y_k / (n+1) interpolates the samples
  c.real() = scale * re;
  c.imag() = scale * im;
  return c;
}

ArrayXc synthesize(const RadialGrid& grid, const ArrayXc& c) {
  require_uniform(grid);
  const int n = grid.size();
  ArrayXr re = c.real(), im = c.imag();
  dst_pair(n, re, im);
  ArrayXc v(n);
  v.real() = 0.5 * re;
  v.imag() = 0.5 * im;
  return v;
}

ArrayXr wavenumbers(const RadialGrid& grid) {
  require_uniform(grid);
  const int n = grid.size();
  ArrayXr k(n);
  for (int i = 0; i < n; ++i) k[i] = pi * (i + 1) / grid.r_max();
  return k;
}

void propagate(const RadialGrid& grid, ArrayXc& v, Real t, bool dealias) {
  require_uniform(grid);
  const int n = grid.size();
  ArrayXr re = v.real(), im = v.imag();
  dst_pair(n, re, im);
  const Real base = pi / grid.r_max();
  const int keep_max = dealias ? (2 * n) / 3 : n;
  for (int i = 0; i < n; ++i) {
    if (i >= keep_max) {
      re[i] = 0;
      im[i] = 0;
      continue;
    }
    const Real kk = base * (i + 1);
    const Real phase = -kk * kk * t;
    const Real c = std::cos(phase), s = std::sin(phase);
    const Real a = re[i], b = im[i];
    re[i] = a * c - b * s;
    im[i] = a * s + b * c;
  }
  dst_pair(n, re, im);
  const Real scale = 1.0 / (2.0 * (n + 1));
  v.real() = scale * re;
  v.imag() = scale * im;
}

}  // namespace sine
}  // namespace inls
