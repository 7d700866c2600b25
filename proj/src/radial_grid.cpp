#include "inls/radial_grid.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace inls {

namespace {

// Fornberg weights for the m-th derivative at x0 from arbitrary nodes x[].
// B. Fornberg, "Generation of finite difference formulas on arbitrarily
// spaced grids", Math. Comp. 51 (1988).
std::vector<Real> fd_weights(Real x0, const std::vector<Real>& x, int m) {
  const int n = static_cast<int>(x.size());
  std::vector<Real> c(static_cast<size_t>(n) * (m + 1), 0.0);
  auto C = [&](int i, int j) -> Real& { return c[static_cast<size_t>(i) * (m + 1) + j]; };

  Real c1 = 1.0;
  Real c4 = x[0] - x0;
  C(0, 0) = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    Real c2 = 1.0;
    const Real c5 = c4;
    c4 = x[i] - x0;
    for (int j = 0; j < i; ++j) {
      const Real c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          C(i, k) = c1 * (k * C(i - 1, k - 1) - c5 * C(i - 1, k)) / c2;
        C(i, 0) = -c1 * c5 * C(i - 1, 0) / c2;
      }
      for (int k = mn; k >= 1; --k) C(j, k) = (c4 * C(j, k) - k * C(j, k - 1)) / c3;
      C(j, 0) = c4 * C(j, 0) / c3;
    }
    c1 = c2;
  }
  std::vector<Real> w(n);
  for (int i = 0; i < n; ++i) w[i] = C(i, m);
  return w;
}

// Nodes/weights of the g-point Gauss-Legendre rule on [-1, 1] by Newton
// iteration on the Legendre recurrence.
void gauss_legendre(int g, std::vector<Real>& xs, std::vector<Real>& ws) {
  xs.resize(g);
  ws.resize(g);
  for (int i = 0; i < (g + 1) / 2; ++i) {
    Real x = std::cos(pi * (i + 0.75) / (g + 0.5));
    Real dp = 0;
    for (int it = 0; it < 100; ++it) {
      Real p0 = 1.0, p1 = x;
      for (int k = 2; k <= g; ++k) {
        const Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = g * (x * p1 - p0) / (x * x - 1.0);
      const Real dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    xs[i] = -x;
    xs[g - 1 - i] = x;
    const Real w = 2.0 / ((1.0 - x * x) * dp * dp);
    ws[i] = w;
    ws[g - 1 - i] = w;
  }
}

}  // namespace

std::shared_ptr<const RadialGrid> RadialGrid::mapped_gl(int panels, int nodes_per_panel,
                                                        Real map_scale) {
  if (panels < 2 || nodes_per_panel < 2 || map_scale <= 0)
    throw std::invalid_argument("mapped_gl: bad parameters");
  auto grid = std::shared_ptr<RadialGrid>(new RadialGrid);
  grid->layout_ = Layout::mapped_gl;
  grid->map_scale_ = map_scale;

  std::vector<Real> gx, gw;
  gauss_legendre(nodes_per_panel, gx, gw);

  const int n = panels * nodes_per_panel;
  grid->r_.resize(n);
  grid->w_.resize(n);
  grid->t_.resize(n);
  grid->dt_dr_.resize(n);

  const Real dt = 1.0 / panels;
  int idx = 0;
  for (int p = 0; p < panels; ++p) {
    const Real t0 = p * dt;
    for (int k = 0; k < nodes_per_panel; ++k, ++idx) {
      const Real t = t0 + 0.5 * dt * (gx[k] + 1.0);
      const Real omt = 1.0 - t;
      const Real r = map_scale * t / omt;
      const Real dr_dt = map_scale / (omt * omt);
      grid->t_[idx] = t;
      grid->r_[idx] = r;
      grid->dt_dr_[idx] = 1.0 / dr_dt;
      grid->w_[idx] = 0.5 * dt * gw[k] * dr_dt * 4.0 * pi * r * r;
    }
  }
  grid->r_max_ = grid->r_[n - 1];
  grid->build_derivative_matrix();
  return grid;
}

std::shared_ptr<const RadialGrid> RadialGrid::uniform(int n, Real r_max) {
  if (n < 8 || r_max <= 0) throw std::invalid_argument("uniform: bad parameters");
  auto grid = std::shared_ptr<RadialGrid>(new RadialGrid);
  grid->layout_ = Layout::uniform;
  grid->r_max_ = r_max;
  const Real h = r_max / (n + 1);
  grid->h_ = h;
  grid->r_ = ArrayXr::LinSpaced(n, h, n * h);
  grid->t_ = grid->r_;
  grid->dt_dr_ = ArrayXr::Ones(n);
  grid->w_ = 4.0 * pi * grid->r_.square() * h;
  grid->build_derivative_matrix();
  return grid;
}

void RadialGrid::build_derivative_matrix() {
  const int n = size();
  const int stencil = 5;
  std::vector<Eigen::Triplet<Real>> trips;
  trips.reserve(static_cast<size_t>(n) * stencil);
  std::vector<Real> xs(stencil);
  for (int i = 0; i < n; ++i) {
    int lo = std::clamp(i - stencil / 2, 0, n - stencil);
    for (int k = 0; k < stencil; ++k) xs[k] = t_[lo + k];
    const auto w = fd_weights(t_[i], xs, 1);
    for (int k = 0; k < stencil; ++k) trips.emplace_back(i, lo + k, w[k]);
  }
  d_t_.resize(n, n);
  d_t_.setFromTriplets(trips.begin(), trips.end());
  d_t_.makeCompressed();
}

ArrayXr RadialGrid::derivative(const ArrayXr& f) const {
  return (d_t_ * f.matrix()).array() * dt_dr_;
}

ArrayXr RadialGrid::derivative_adjoint(const ArrayXr& f) const {
  return d_t_.transpose() * (dt_dr_ * f).matrix();
}

ArrayXc RadialGrid::derivative(const ArrayXc& f) const {
  ArrayXr re = (d_t_ * f.real().matrix()).array() * dt_dr_;
  ArrayXr im = (d_t_ * f.imag().matrix()).array() * dt_dr_;
  ArrayXc out(f.size());
  out.real() = re;
  out.imag() = im;
  return out;
}

Real RadialGrid::tail_weight_fraction(const ArrayXr& integrand_abs) const {
  const int n = size();
  // Outermost panel for mapped grids, outermost 10% of nodes for uniform.
  const int tail_start = layout_ == Layout::mapped_gl
                             ? n - std::max(2, n / 16)
                             : n - std::max(2, n / 10);
  Real total = 0, tail = 0;
  for (int i = 0; i < n; ++i) {
    const Real c = w_[i] * integrand_abs[i];
    total += c;
    if (i >= tail_start) tail += c;
  }
  return total > 0 ? tail / total : 0.0;
}

}  // namespace inls
