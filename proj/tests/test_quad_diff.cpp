#include <numbers>
#include <random>

#include "doctest.h"
#include "dynatomic/quad_diff.hpp"
#include "dynatomic/ray_tracer.hpp"

using namespace dynatomic;

namespace {

constexpr double pi = std::numbers::pi;

cplx random_point(std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> u(-r, r);
  return {u(rng), u(rng)};
}

// Random differential with poles away from 0 and from each other.
QuadDiff random_qd(std::mt19937_64& rng, int poles, bool doubles) {
  QuadDiff q;
  while (static_cast<int>(q.terms().size()) < poles) {
    const cplx a = random_point(rng, 1.5);
    if (std::abs(a) < 0.1) continue;
    bool close = false;
    for (const auto& t : q.terms()) close = close || std::abs(t.a - a) < 0.05;
    if (close) continue;
    q.add({a, doubles ? random_point(rng, 1) : cplx(0), random_point(rng, 1)});
  }
  return q;
}

const PoleTerm* find_pole(const QuadDiff& q, cplx a) {
  for (const auto& t : q.terms())
    if (std::abs(t.a - a) < 1e-12) return &t;
  return nullptr;
}

}  // namespace

TEST_CASE("closed-form pushforward") {
  // The simple pole at the critical point pushes to zero.
  for (cplx c : {cplx(0), cplx(-0.75), cplx(0.3, 0.4)})
    for (int d = 2; d <= 4; ++d) CHECK(pushforward(d, c, QuadDiff({{0.0, 0.0, 1.0}})).empty());

  // d=2, c=0: f(1)=1, f'(1)=2.
  QuadDiff p = pushforward(2, 0.0, QuadDiff({{1.0, 0.0, 1.0}}));
  REQUIRE(p.terms().size() == 2);
  CHECK(std::abs(find_pole(p, 1.0)->c1 - 0.5) < 1e-15);
  CHECK(std::abs(find_pole(p, 0.0)->c1 + 0.5) < 1e-15);

  // d=2, c=-3/4, a=-1/2: f(a)=a, f'(a)=-1, (d-1)/(a f'(a)) = 2.
  QuadDiff s = pushforward(2, -0.75, QuadDiff({{-0.5, 1.0, 0.0}}));
  REQUIRE(s.terms().size() == 2);
  CHECK(std::abs(find_pole(s, -0.5)->c2 - 1.0) < 1e-15);
  CHECK(std::abs(find_pole(s, -0.5)->c1 + 2.0) < 1e-15);
  CHECK(std::abs(find_pole(s, -0.75)->c1 - 2.0) < 1e-15);
  for (cplx z : {cplx(0.3, 0.2), cplx(-2, 1), cplx(0.1, -0.7)})
    CHECK(std::abs(s(z) - pushforward_bruteforce(2, -0.75, QuadDiff({{-0.5, 1.0, 0.0}}), z)) < 1e-12 * std::abs(s(z)));

  CHECK_THROWS_AS(pushforward(3, 0.2, QuadDiff({{0.0, 1.0, 0.0}})), Error);
}

TEST_CASE("brute-force preimage sum") {
  CHECK(std::abs(pushforward_bruteforce(2, 0.0, QuadDiff({{0.0, 0.0, 1.0}}), 1.0)) < 1e-16);
  // Preimages of 4 are +-2: (1/1)/16 + (1/-3)/16.
  const cplx v = pushforward_bruteforce(2, 0.0, QuadDiff({{1.0, 0.0, 1.0}}), 4.0);
  CHECK(std::abs(v - 0.5 * (1.0 / 3 - 1.0 / 4)) < 1e-16);
  CHECK_THROWS_AS(pushforward_bruteforce(2, 0.25, QuadDiff({{1.0, 0.0, 1.0}}), 0.25), Error);
  try {
    pushforward_bruteforce(2, 0.25, QuadDiff({{1.0, 0.0, 1.0}}), 0.25);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NearCriticalValue);
  }
}

TEST_CASE("closed form agrees with the preimage sum") {
  std::mt19937_64 rng(7);
  double worst = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 3;
    const cplx c = random_point(rng, 1);
    const QuadDiff q = random_qd(rng, 1 + trial % 4, trial % 2 == 0);
    const QuadDiff p = pushforward(d, c, q);
    for (int i = 0; i < 100; ++i) {
      const cplx z = random_point(rng, 2.5);
      const cplx exact = pushforward_bruteforce(d, c, q, z);
      worst = std::max(worst, std::abs(p(z) - exact) / std::abs(exact));
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("pole bookkeeping and linearity") {
  QuadDiff q({{1.0, 0.0, 2.0}, {1.0 + 1e-12, 1.0, -2.0}});
  REQUIRE(q.terms().size() == 1);
  CHECK(q.terms()[0].c2 == cplx(1.0));
  CHECK(q.terms()[0].c1 == cplx(0.0));
  CHECK(q.minus(q).empty());
  CHECK_THROWS_AS(QuadDiff({{1.0, 0.0, 1.0}, {1.0 + 1e-7, 0.0, 1.0}}), Error);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const cplx c = random_point(rng, 1);
    const QuadDiff a = random_qd(rng, 2, true), b = random_qd(rng, 3, false);
    const QuadDiff sum = pushforward(3, c, a.plus(b));
    const QuadDiff parts = pushforward(3, c, a).plus(pushforward(3, c, b));
    CHECK(sum.minus(parts).max_coefficient() < 1e-12 * (1 + parts.max_coefficient()));
  }
}

TEST_CASE("pushforward never fixes a simple-pole differential") {
  std::mt19937_64 rng(3);
  double smallest = INFINITY;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 2;
    const cplx c = random_point(rng, 1);
    const QuadDiff q = random_qd(rng, 1 + trial % 5, false);
    smallest = std::min(smallest, pushforward(d, c, q).minus(q).max_coefficient());
  }
  CHECK(smallest > 1e-6);
}

TEST_CASE("norms") {
  const QuadDiff inv({{0.0, 0.0, 1.0}});
  for (double r : {1.0, 2.5}) {
    const NormEstimate n = qd_norm(inv, {0.0, 0, r});
    CHECK(std::abs(n.value - 2 * pi * r) < 1e-3 * 2 * pi * r);
    CHECK(n.error < 1e-3 * n.value);
  }
  CHECK(qd_norm(QuadDiff(), {0.0, 0, 3}).value == 0);
  // Off-center pole: the disk |z - 1| < 1 seen from 0 has the same norm.
  CHECK(std::abs(qd_norm(QuadDiff({{1.0, 0.0, 1.0}}), {1.0, 0, 1}).value - 2 * pi) < 1e-6);
  // dz^2/z^2 on 1 < |z| < 2 integrates to 2 pi log 2.
  CHECK(std::abs(qd_norm(QuadDiff({{0.0, 1.0, 0.0}}), {0.0, 1, 2}).value - 2 * pi * std::log(2.0)) < 1e-8);
  CHECK_THROWS_AS(qd_norm(QuadDiff({{0.5, 1.0, 0.0}}), {0.0, 0, 1}), Error);
  // 1/|z - a| over |z| < R with |a| < R: against a fine midpoint rule on a
  // polar grid centred at the pole (where the integrand is smooth) minus the
  // part of the pole-centred disk lying outside.
  const NormEstimate off = qd_norm(QuadDiff({{0.5, 0.0, 1.0}}), {0.0, 0, 1});
  double oracle = 0;
  const int nr = 2000, nt = 2000;
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nt; ++j) {
      const double rho = (i + 0.5) * 1.5 / nr, t = (j + 0.5) * 2 * pi / nt;
      if (std::abs(0.5 + std::polar(rho, t)) < 1) oracle += (1.5 / nr) * (2 * pi / nt);
    }
  CHECK(std::abs(off.value - oracle) < 2e-3 * oracle);
}

TEST_CASE("contraction inequality") {
  const ContractionReport r = contraction_check(2, 0.0, QuadDiff({{1.0, 0.0, 1.0}}), 3);
  CHECK(r.holds);
  CHECK(r.preimage.value - r.pushed.value > r.preimage.error + r.pushed.error);
  CHECK(r.full.value - r.preimage.value > r.preimage.error + r.full.error);
  // U = {|w| < sqrt 3} here, a disk.
  CHECK(std::abs(r.preimage.value - qd_norm(QuadDiff({{1.0, 0.0, 1.0}}), {0.0, 0, std::sqrt(3.0)}).value) <
        1e-5 * r.preimage.value);

  std::mt19937_64 rng(5);
  const ContractionReport s = contraction_check(3, cplx(0, 0.2), random_qd(rng, 3, false), 3);
  CHECK(s.holds);

  CHECK_THROWS_AS(contraction_check(2, 0.0, QuadDiff(), 3), Error);
  CHECK_THROWS_AS(contraction_check(2, 3.0, QuadDiff({{1.0, 0.0, 1.0}}), 1.5), Error);
}

TEST_CASE("case 2 certificate") {
  Case2Report a = case2_certificate(2, 0.25, 0.5, 1);
  CHECK(std::abs(a.dP_dc - 1.0) < 1e-15);
  CHECK(a.residual < 1e-12);

  // The period-3 parabolic cycle at -7/4.
  cplx seed = 0;
  double best = INFINITY;
  for (cplx z : periodic_points(2, -1.75, 3)) {
    const double slope = std::abs(orbit_data(2, -1.75, z, 3).rho - 1.0);
    if (slope < best) best = slope, seed = z;
  }
  auto [c0, z0] = refine_parabolic(2, -1.75, seed, 3, 1.0);
  CHECK(std::abs(c0 + 1.75) < 1e-12);
  Case2Report b = case2_certificate(2, c0, z0, 3);
  CHECK(std::abs(b.dP_dc) > 0.1);
  CHECK(b.residual < 1e-8);
  // dP/dc against a central difference in c.
  auto p3 = [&](cplx c) {
    cplx z = z0;
    for (int k = 0; k < 3; ++k) z = z * z + c;
    return z - z0;
  };
  CHECK(std::abs((p3(c0 + 1e-5) - p3(c0 - 1e-5)) / 2e-5 - b.dP_dc) < 1e-6);
  // ell may be any multiple of the period.
  CHECK(case2_certificate(2, c0, z0, 6).residual < 1e-8);

  const cplx c9 = trace_parameter_ray(Angle(9, 26, 3), 1e-8).landing_estimate;
  const ParabolicPoint p = locate_parabolic(3, c9, 3);
  CHECK(p.period == 3);
  Case2Report e = case2_certificate(3, p.c, p.z, 3);
  CHECK(e.residual < 1e-6);
  CHECK(std::abs(e.dP_dc) > 0.05);

  CHECK_THROWS_AS(case2_certificate(2, -0.75, -0.5, 1), Error);
  CHECK_THROWS_AS(case2_certificate(2, 0.25, 0.4, 1), Error);
}

TEST_CASE("double pole certificate") {
  // rho(c) = 1 - sqrt(1 - 4c) for the fixed point; rho' = 2 / sqrt(1 - 4c).
  DoublePoleReport a = double_pole_certificate(2, -0.75, -0.5, 1);
  CHECK(std::abs(a.rho + 1.0) < 1e-15);
  CHECK(std::abs(a.rho_dot - 1.0) < 1e-6);
  REQUIRE(a.mu.mu.size() == 1);
  CHECK(std::abs(a.mu.mu[0] + 1.0) < 1e-15);
  CHECK(a.residual < 1e-10);
  CHECK(std::abs(a.mu_sum - a.rho_dot / a.rho) < 1e-8);
  CHECK(a.mu.closure < 1e-12);

  // Root of the period-3 rabbit component on the main cardioid: the fixed
  // point rho/2 has multiplier rho = e^{2 pi i / 3} at c = rho/2 - rho^2/4.
  const cplx w = std::polar(1.0, 2 * pi / 3);
  DoublePoleReport b = double_pole_certificate(2, w / 2.0 - w * w / 4.0, w / 2.0, 1);
  CHECK(std::abs(b.rho - w) < 1e-15);
  CHECK(std::abs(b.rho_dot - 2.0 / (1.0 - w)) < 1e-6);
  CHECK(std::abs(b.rho_dot) > 0.1);
  CHECK(b.residual < 1e-8);
  CHECK(std::abs(b.mu_sum - b.rho_dot / b.rho) < 1e-8);

  // d=3 satellite: the companion rays 11/80 and 19/80 land at the root of a
  // period-4 component attached to a period-2 one.
  const cplx c11 = trace_parameter_ray(Angle(11, 80, 3), 1e-8).landing_estimate;
  const ParabolicPoint p = locate_parabolic(3, c11, 4);
  CHECK(p.period == 2);
  DoublePoleReport s = double_pole_certificate(3, p.c, p.z, p.period);
  CHECK(std::abs(s.rho + 1.0) < 1e-8);
  CHECK(s.residual < 1e-6);
  CHECK(std::abs(s.mu_sum - s.rho_dot / s.rho) < 1e-6);
  CHECK(s.mu.closure < 1e-10);

  // Two fixed points per multiplier period: the tuple for m = 2p repeats.
  DoublePoleReport twice = double_pole_certificate(2, w / 2.0 - w * w / 4.0, w / 2.0, 2);
  CHECK(twice.residual < 1e-8);

  CHECK_THROWS_AS(double_pole_certificate(2, 0.25, 0.5, 1), Error);
  try {
    double_pole_certificate(2, 0.25, 0.5, 1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MultiplierOne);
  }
}
