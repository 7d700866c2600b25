#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "inls/diagnostics.hpp"
#include "inls/ground_state.hpp"

using namespace inls;

TEST_CASE("closed form of Q") {
  CHECK(GroundState::value(0.0) == 1.0);
  CHECK(GroundState::value(2.0) == 0.5);
  CHECK(GroundState::value(6.0) == 0.25);
}

TEST_CASE("rescale/translate preserves the critical norms") {
  auto g = RadialGrid::mapped_gl(64, 8, 2.0);
  const ComplexField q = evaluate_Q(g);

  RescaleTranslate id;
  const auto same = apply_rescale_translate(id, q);
  CHECK((same.field.samples() - q.samples()).abs().maxCoeff() < 1e-12);
  CHECK_FALSE(same.out_of_domain);

  RescaleTranslate two;
  two.lambda = 2.0;
  const auto scaled = apply_rescale_translate(two, q);
  CHECK(h1dot_norm_sq(scaled.field) == doctest::Approx(h1dot_norm_sq(q)).epsilon(0.01));

  // translation is an isometry on the box
  auto g3 = Grid3D::make(32, 8.0);
  const Real c0[3] = {0, 0, 0};
  const ComplexField gauss = gaussian_field(g3, 1.0, 1.5, c0);
  RescaleTranslate shift;
  shift.center[0] = 1.5;
  const auto moved = apply_rescale_translate(shift, gauss);
  CHECK(mass(moved.field) == doctest::Approx(mass(gauss)).epsilon(0.01));
  CHECK(h1dot_norm_sq(moved.field) == doctest::Approx(h1dot_norm_sq(gauss)).epsilon(0.01));
  CHECK_FALSE(moved.out_of_domain);

  // pushing most of the bump outside the box must be flagged
  RescaleTranslate out;
  out.center[0] = 7.5;
  CHECK(apply_rescale_translate(out, gauss).out_of_domain);
}

TEST_CASE("elliptic residual: order-2 decay, nonzero floor off the solution") {
  const Real r1 = elliptic_residual(*RadialGrid::uniform(500, 40.0));
  const Real r2 = elliptic_residual(*RadialGrid::uniform(1000, 40.0));
  const Real r3 = elliptic_residual(*RadialGrid::uniform(2000, 40.0));
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.35));
  CHECK(r2 / r3 == doctest::Approx(4.0).epsilon(0.35));
  CHECK(r3 < 1e-4);

  // 1.1*Q leaves the fixed analytic residual 0.231 * r^{-1} Q(r)^3
  auto residual_of_scaled = [](int n) {
    auto g = RadialGrid::uniform(n, 40.0);
    const ArrayXr& r = g->nodes();
    Real sup = 0;
    for (int i = 1; i < g->size() - 1; ++i) {
      if (r[i] < 1.0 || r[i] > 36.0) continue;
      const Real h = g->spacing();
      const Real qm = 1.1 * GroundState::value(r[i - 1]);
      const Real q0 = 1.1 * GroundState::value(r[i]);
      const Real qp = 1.1 * GroundState::value(r[i + 1]);
      const Real d2 = (qp - 2 * q0 + qm) / (h * h);
      const Real d1 = (qp - qm) / (2 * h);
      sup = std::max(sup, std::abs(d2 + 2 / r[i] * d1 + q0 * q0 * q0 / r[i]));
    }
    return sup;
  };
  CHECK(residual_of_scaled(500) > 0.05);
  CHECK(residual_of_scaled(2000) > 0.05);
}

TEST_CASE("Weinstein quotient: value at Q, strict gap at a Gaussian, ascent recovery") {
  auto g = RadialGrid::mapped_gl(64, 8, 2.0);
  const ComplexField q = evaluate_Q(g);
  CHECK(weinstein_quotient(q) == doctest::Approx(sharp_C1).epsilon(0.005));

  const ComplexField gauss = gaussian_field(g, 1.0, 1.0);
  const Real jg = weinstein_quotient(gauss);
  CHECK(jg < 0.9 * sharp_C1);

  auto ball = RadialGrid::uniform(24576, 3000.0);
  const ArrayXr g0 = (-ball->nodes().square()).exp();
  const AscentResult res = sharp_constant_via_optimization(ball, g0);
  CHECK(res.value == doctest::Approx(sharp_C1).epsilon(0.01));
}

TEST_CASE("quotient invariances and sharp bound over a random family") {
  auto g = RadialGrid::mapped_gl(64, 8, 2.0);
  const ComplexField gauss = gaussian_field(g, 1.0, 1.0);
  const Real base = weinstein_quotient(gauss);

  const ComplexField scaled = gauss.like(3.7 * gauss.samples());
  CHECK(weinstein_quotient(scaled) == doctest::Approx(base).epsilon(1e-10));

  ArrayXc dil(g->size());
  const Real lam = 1.7;
  for (int i = 0; i < g->size(); ++i) {
    const Real r = lam * g->nodes()[i];
    dil[i] = std::sqrt(lam) * std::exp(-r * r);
  }
  CHECK(weinstein_quotient(ComplexField(g, dil)) == doctest::Approx(base).epsilon(0.01));

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<Real> coef(-1, 1), width(0.4, 2.0);
  for (int trial = 0; trial < 25; ++trial) {
    const Real a = coef(rng), b = coef(rng), d = width(rng);
    ArrayXc u(g->size());
    for (int i = 0; i < g->size(); ++i) {
      const Real r = g->nodes()[i];
      u[i] = (a + b * r * r) * std::exp(-d * r * r);
    }
    ComplexField f(g, std::move(u));
    if (h1dot_norm_sq(f) < 1e-12) continue;
    CHECK(weinstein_quotient(f) <= sharp_C1 * 1.005);
  }
}

TEST_CASE("ground-state constants record") {
  const GroundStateConstants c = ground_state_constants();
  CHECK(c.kinetic == doctest::Approx(kinetic_Q).epsilon(0.005));
  CHECK(c.potential == doctest::Approx(potential_Q).epsilon(0.005));
  CHECK(c.energy == doctest::Approx(energy_Q).epsilon(0.005));
  CHECK(c.c1 == doctest::Approx(sharp_C1).epsilon(0.005));
  CHECK(std::abs(c.kinetic - c.potential) < 0.005 * c.kinetic);
}
