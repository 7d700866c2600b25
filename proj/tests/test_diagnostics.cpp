#include <doctest.h>

#include <cmath>
#include <random>

#include "inls/diagnostics.hpp"
#include "inls/ground_state.hpp"
#include "inls/variational.hpp"

using namespace inls;

TEST_CASE("virial weight: profile regions and derivative bounds") {
  const VirialWeight w = VirialWeight::localized(3.0);
  CHECK(w.eval(1.0).a == doctest::Approx(1.0));
  CHECK(w.eval(1.0).d1 == doctest::Approx(2.0));
  CHECK(w.eval(7.0).a == doctest::Approx(2.5 * 9.0));
  CHECK(w.eval(7.0).d1 == 0.0);

  // continuity at both junctions
  CHECK(w.eval(3.0 - 1e-9).a == doctest::Approx(w.eval(3.0 + 1e-9).a).epsilon(1e-6));
  CHECK(w.eval(6.0 - 1e-9).a == doctest::Approx(w.eval(6.0 + 1e-9).a).epsilon(1e-6));
  CHECK(w.eval(6.0 - 1e-9).d1 == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(w.eval(6.0 - 1e-9).d2 == doctest::Approx(0.0).epsilon(1e-6));

  // |d^m a| <~ R^{2-m} with a fixed envelope constant
  const Real R = 3.0;
  for (Real r = 0.05; r < 3.0 * R; r += 0.05) {
    const auto d = w.eval(r);
    CHECK(std::abs(d.a) <= 4.0 * R * R);
    CHECK(std::abs(d.d1) <= 6.0 * R);
    CHECK(std::abs(d.d2) <= 8.0);
    CHECK(std::abs(d.d3) <= 40.0 / R);
    CHECK(std::abs(d.d4) <= 160.0 / (R * R));
  }
}

TEST_CASE("virial quantity: real fields, plateau support, plane-wave oracle") {
  auto gr = RadialGrid::mapped_gl(64, 8, 2.0);
  const ComplexField q = evaluate_Q(gr);
  CHECK(virial_quantity(q, VirialWeight::pure()) == 0.0);

  // compactly supported field beyond the plateau: every node sees a_j = 0
  const VirialWeight loc = VirialWeight::localized(2.0);
  ArrayXc bump = ArrayXc::Zero(gr->size());
  for (int i = 0; i < gr->size(); ++i) {
    const Real s = (gr->nodes()[i] - 6.0) / 1.5;
    if (std::abs(s) < 1.0) bump[i] = std::exp(-1.0 / (1.0 - s * s));
  }
  CHECK(virial_quantity(ComplexField(gr, bump), loc) == 0.0);

  // u = e^{i x_1} phi with real phi: M_a = 4 * integral x_1 phi^2
  auto g3 = Grid3D::make(32, 2.0 * pi * 2.0);  // k = 1 is the m = 4 mode
  ArrayXc u(g3->size());
  long idx = 0;
  for (int ix = 0; ix < g3->n(); ++ix)
    for (int iy = 0; iy < g3->n(); ++iy)
      for (int iz = 0; iz < g3->n(); ++iz, ++idx) {
        const Real x = g3->axis_x()[ix], y = g3->axis_x()[iy], z = g3->axis_x()[iz];
        const Real phi = std::exp(-0.5 * ((x - 1) * (x - 1) + y * y + z * z));
        u[idx] = std::polar(phi, x);
      }
  const Real expected = 4.0 * 1.0 * std::pow(pi, 1.5);  // 4 * c1 * pi^{3/2}
  CHECK(virial_quantity(ComplexField(g3, std::move(u)), VirialWeight::pure()) ==
        doctest::Approx(expected).epsilon(0.01));
}

TEST_CASE("virial rate: ground-state family values and the exact pure-weight identity") {
  auto gr = RadialGrid::mapped_gl(64, 8, 2.0);
  const ComplexField q = evaluate_Q(gr);
  const Real at_q = virial_rate(q, VirialWeight::pure());
  CHECK(std::abs(at_q) < 8.0 * kinetic_Q * 1e-3);

  const ComplexField half = q.like(0.5 * q.samples());
  CHECK(virial_rate(half, VirialWeight::pure()) == doctest::Approx(4.0 * pi).epsilon(0.02));

  // assembled rate equals 8*(kinetic - potential) exactly in the discrete sense
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<Real> coef(-1, 1), width(0.5, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    ArrayXc u(gr->size());
    const Real a = coef(rng), b = coef(rng), d = width(rng);
    for (int i = 0; i < gr->size(); ++i) {
      const Real r = gr->nodes()[i];
      u[i] = Complex(a + b * r, 0.3 * a * r) * std::exp(-d * r * r);
    }
    const ComplexField f(gr, std::move(u));
    const Real rate = virial_rate(f, VirialWeight::pure());
    const Real closed = 8.0 * (h1dot_norm_sq(f) - weighted_integral(f, WeightedNormSpec(1, 4)).value);
    CHECK(rate == doctest::Approx(closed).epsilon(1e-10));
  }

  // sub-threshold coercivity feeds the rate: rate >= 8 * delta_bound * kinetic
  const ComplexField sub = q.like(0.6 * q.samples());
  const Real kin = h1dot_norm_sq(sub);
  const Real bound = (1.0 - sharp_C1 * kin) * kin * 8.0;
  CHECK(virial_rate(sub, VirialWeight::pure()) >= bound - 1e-6);
}

TEST_CASE("localized-versus-pure rate difference is controlled by the tails") {
  auto gr = RadialGrid::mapped_gl(64, 8, 2.0);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<Real> coef(-1, 1), width(0.5, 1.5), radius(4.0, 12.0);
  for (int trial = 0; trial < 12; ++trial) {
    ArrayXc u(gr->size());
    const Real a = coef(rng), b = coef(rng), d = width(rng);
    for (int i = 0; i < gr->size(); ++i) {
      const Real r = gr->nodes()[i];
      u[i] = Complex(a + b * r, -0.4 * b * r * r) * std::exp(-d * r);
    }
    const ComplexField f(gr, std::move(u));
    const Real R = radius(rng);
    const Real diff =
        std::abs(virial_rate(f, VirialWeight::localized(R)) - virial_rate(f, VirialWeight::pure()));
    const TailIntegrals tails = tightness_tail(f, R);
    CHECK(diff <= 100.0 * tails.sum() + 1e-12);
  }
}

TEST_CASE("tightness tails: compact support, ground-state tail law, monotonicity") {
  auto gr = RadialGrid::mapped_gl(64, 8, 2.0);
  ArrayXc bump = ArrayXc::Zero(gr->size());
  for (int i = 0; i < gr->size(); ++i) {
    const Real s = (gr->nodes()[i] - 3.0) / 2.0;
    if (std::abs(s) < 1.0) bump[i] = std::exp(-1.0 / (1.0 - s * s));
  }
  const TailIntegrals empty = tightness_tail(ComplexField(gr, bump), 6.0);
  CHECK(empty.grad == 0.0);
  CHECK(empty.potential == 0.0);
  CHECK(empty.hardy == 0.0);

  const ComplexField q = evaluate_Q(gr);
  const TailIntegrals far = tightness_tail(q, 100.0);
  CHECK(far.grad == doctest::Approx(16.0 * pi / 100.0).epsilon(0.10));

  Real prev = tightness_tail(q, 1.0).sum();
  for (const Real radius : {2.0, 5.0, 10.0, 50.0}) {
    const Real cur = tightness_tail(q, radius).sum();
    CHECK(cur <= prev + 1e-15);
    prev = cur;
  }

  // ~99% coverage radius of Q's gradient tail: 16 pi / R = 1% of 8 pi / 3
  const Real r99 = tightness_radius(q, 0.99);
  CHECK(r99 > 50.0);
}

TEST_CASE("scattering detector on synthetic free histories") {
  // the box must outrun the free dispersal over the sampled window, or the
  // radiation monitor vetoes the verdict
  auto gr = RadialGrid::uniform(2048, 200.0);
  const ComplexField u0 = gaussian_field(gr, 1.0, 1.0);

  auto build = [&](Real shift) {
    ScatteringDetector det;
    for (int k = 0; k <= 20; ++k) {
      const Real t = shift + 0.25 * k;
      SimulationState st = make_state(free_propagate(u0, t));
      st.elapsed = t;
      det.add_sample(st);
    }
    return det.verdict();
  };
  const ScatteringVerdict v0 = build(0.0);
  CHECK(v0.determinable);
  CHECK(v0.trailing_deviation < 1e-10);
  CHECK(v0.dispersed);

  // invariance under a time shift of the history
  const ScatteringVerdict v5 = build(5.0);
  CHECK(v5.dispersed);
  CHECK(v5.trailing_deviation == doctest::Approx(v0.trailing_deviation).epsilon(1.0));

  ScatteringDetector fresh;
  CHECK_FALSE(fresh.verdict().determinable);
}

TEST_CASE("space-time accumulator: closed-form free Gaussian saturates") {
  // integral |u(t)|^10 dx = (pi/10)^{3/2} (1+16 t^2)^{-6} for u0 = e^{-|x|^2}
  TimeAccumulator acc;
  Real prev = -1;
  for (int k = 0; k <= 400; ++k) {
    const Real t = 0.01 * k;
    acc.add(t, std::pow(pi / 10.0, 1.5) * std::pow(1.0 + 16.0 * t * t, -6.0));
    CHECK(acc.value() >= prev);
    prev = acc.value();
  }
  CHECK(acc.value() > 0.0);
  CHECK(acc.trailing_increment_fraction(0.25) < 0.01);

  TimeAccumulator zero;
  for (int k = 0; k <= 10; ++k) zero.add(0.1 * k, 0.0);
  CHECK(zero.value() == 0.0);
}

TEST_CASE("far-center deviation decreases with distance on a small box") {
  auto g3 = Grid3D::make(64, 16.0);
  FarCenterParams p;
  p.amplitude = 1.2;
  p.width = 1.0;
  p.t_final = 0.5;
  p.dt = 0.01;

  std::vector<Real> devs;
  for (const Real c : {0.0, 4.0, 8.0}) {
    FarCenterParams pc = p;
    pc.center[0] = c;
    const FarCenterResult r = far_center_deviation(g3, pc);
    REQUIRE_FALSE(r.aborted);
    devs.push_back(r.deviation);
  }
  CHECK(devs[0] > devs[1]);
  CHECK(devs[1] > devs[2]);

  FarCenterParams zero_amp = p;
  zero_amp.amplitude = 0.0;
  CHECK(far_center_deviation(g3, zero_amp).deviation == 0.0);
}
