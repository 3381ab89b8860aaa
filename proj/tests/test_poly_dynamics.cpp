#include <numbers>
#include <random>
#include <tuple>

#include "doctest.h"
#include "dynatomic/poly_dynamics.hpp"

using namespace dynatomic;

namespace {

cplx iterate(int d, cplx c, cplx z, int n) {
  for (int k = 0; k < n; ++k) z = std::pow(z, d) + c;
  return z;
}

const cplx kOmega3 = std::polar(1.0, 2 * std::numbers::pi / 3);

}  // namespace

TEST_CASE("orbit data") {
  OrbitData o = orbit_data(2, -0.75, -0.5, 1);
  CHECK(std::abs(o.rho - cplx(-1.0)) < 1e-15);
  CHECK(std::abs(o.z[1] - cplx(-0.5)) < 1e-15);
  o = orbit_data(3, cplx(0.1, 0.2), cplx(0.3, -0.1), 4);
  cplx prod = 1.0;
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(std::abs(o.z[k + 1] - (std::pow(o.z[k], 3) + o.c)) < 1e-14);
    prod *= 3.0 * o.z[k] * o.z[k];
  }
  CHECK(std::abs(prod - o.rho) < 1e-12);
}

TEST_CASE("dPn/dc") {
  CHECK(std::abs(dPn_dc(2, 0.25, 0.5, 1) - cplx(1.0)) < 1e-15);
  // delta_1 = 2 * (-1/2) = -1, so 1 + delta_1 = 0.
  CHECK(std::abs(dPn_dc(2, -0.75, -0.5, 2)) < 1e-15);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 3;
    const int n = 1 + trial % 6;
    const cplx c(u(rng), u(rng)), z(u(rng), u(rng));
    const double h = 1e-6;
    const cplx fd = (iterate(d, c + h, z, n) - iterate(d, c - h, z, n)) / (2 * h);
    const cplx exact = dPn_dc(d, c, z, n);
    CHECK(std::abs(fd - exact) <= 1e-5 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("periodic points") {
  auto roots = periodic_points(2, 0.0, 2);
  REQUIRE(roots.size() == 4);
  for (cplx expect : {cplx(0.0), cplx(1.0), kOmega3, std::conj(kOmega3)}) {
    double best = 1e9;
    for (cplx z : roots) best = std::min(best, std::abs(z - expect));
    CHECK(best < 1e-12);
  }
  roots = periodic_points(2, -1.0, 2);
  for (cplx expect : {cplx(0.0), cplx(-1.0)}) {
    double best = 1e9;
    for (cplx z : roots) best = std::min(best, std::abs(z - expect));
    CHECK(best < 1e-12);
  }

  // Vieta: f^n(z) - z has no z^{N-1} term, and its constant term is f^n(0).
  for (auto [d, n, c] : {std::tuple{3, 3, cplx(0.3, 0.1)}, std::tuple{2, 6, cplx(-0.4, 0.6)},
                         std::tuple{4, 3, cplx(0.1, -0.2)}}) {
    auto pr = periodic_roots(d, c, n);
    std::size_t count = 1;
    for (int k = 0; k < n; ++k) count *= static_cast<std::size_t>(d);
    REQUIRE(pr.size() == count);
    std::complex<long double> sum = 0, prod = 1;
    for (const auto& r : pr) {
      CHECK(r.residual < 1e-10);
      sum += std::complex<long double>(r.z.real(), r.z.imag());
      prod *= std::complex<long double>(r.z.real(), r.z.imag());
    }
    CHECK(std::abs(sum) < 1e-9);
    const cplx p0 = iterate(d, c, 0.0, n);
    const std::complex<long double> expect = (count % 2 == 0 ? 1.0L : -1.0L) * std::complex<long double>(p0.real(), p0.imag());
    CHECK(std::abs(prod - expect) < 1e-8 * std::max(1.0L, std::abs(expect)));
    for (std::size_t i = 1; i < pr.size(); ++i)
      CHECK((pr[i - 1].z.real() < pr[i].z.real() ||
             (pr[i - 1].z.real() == pr[i].z.real() && pr[i - 1].z.imag() <= pr[i].z.imag())));
  }

  CHECK(exact_period_points(2, cplx(0.1, 0.3), 4).size() == 12);
  CHECK(exact_period_points(3, cplx(0.1, 0.3), 2).size() == 6);
  CHECK(exact_period(2, -1.0, 0.0, 4) == 2);
}

TEST_CASE("multiple roots at parabolic parameters are still found") {
  auto pr = periodic_roots(2, -1.75, 3);
  REQUIRE(pr.size() == 8);
  for (const auto& r : pr) CHECK(r.residual < 1e-10);
  pr = periodic_roots(2, -0.75, 2);
  int near = 0;
  for (const auto& r : pr) near += std::abs(r.z + 0.5) < 1e-5;
  CHECK(near == 3);
}

TEST_CASE("jets at parabolic cycles") {
  JetReport j = jet_normal_form(2, -0.75, -0.5, 1, 2);
  CHECK(std::abs(j.iterate.a0) < 1e-9);
  CHECK(std::abs(j.iterate.a1 - 1.0) < 1e-9);
  CHECK(std::abs(j.iterate.a2) < 1e-9);
  CHECK(std::abs(j.predicted.a2 - j.iterate.a2) < 1e-12);

  const cplx z0 = kOmega3 / 2.0;
  const cplx rabbit = z0 - z0 * z0;
  j = jet_normal_form(2, rabbit, z0, 1, 3);
  CHECK(std::abs(j.rho - kOmega3) < 1e-12);
  CHECK(std::abs(j.iterate.a0) < 1e-6);
  CHECK(std::abs(j.iterate.a1 - 1.0) < 1e-6);
  CHECK(std::abs(j.iterate.a2) < 1e-6);

  CHECK_THROWS_AS(jet_normal_form(2, 0.25, 0.5, 1, 1), Error);
  CHECK_THROWS_AS(jet_normal_form(2, -0.75, -0.5, 1, 3), Error);

  // Jet composition against direct expansion of the composite polynomial.
  Jet3 f{0.0, 2.0, 3.0}, g{0.0, -1.0, 0.5};
  Jet3 fg = f.compose(g);
  CHECK(std::abs(fg.a1 - cplx(-2.0)) < 1e-15);
  CHECK(std::abs(fg.a2 - cplx(2.0 * 0.5 + 3.0)) < 1e-15);
}

TEST_CASE("parabolic refinement") {
  auto [c, z] = refine_parabolic(2, cplx(-0.74, 0.01), cplx(-0.49, 0.0), 1, -1.0);
  CHECK(std::abs(c - cplx(-0.75)) < 1e-14);
  CHECK(std::abs(z - cplx(-0.5)) < 1e-14);
  const cplx z0 = kOmega3 / 2.0;
  std::tie(c, z) = refine_parabolic(2, cplx(-0.12, 0.74), cplx(-0.25, 0.43), 1, kOmega3);
  CHECK(std::abs(c - (z0 - z0 * z0)) < 1e-14);
}

TEST_CASE("orbit splitting") {
  SplitReport s = orbit_splitting(2, -0.75, 2, 1e-3);
  CHECK(s.lengths == std::vector<int>{1, 2});
  CHECK(s.parabolic_period == 1);
  s = orbit_splitting(2, -1.75, 3, 1e-3);
  CHECK(s.lengths == std::vector<int>{3, 3});
  CHECK(s.parabolic_period == 3);
  CHECK_THROWS_AS(orbit_splitting(2, cplx(0.3, 0.3), 3, 1e-3), Error);
}
