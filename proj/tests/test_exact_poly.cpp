#include "doctest.h"
#include "dynatomic/exact_poly.hpp"

using namespace dynatomic;

TEST_CASE("bivariate arithmetic") {
  const ExactPoly2 z = ExactPoly2::z(), c = ExactPoly2::c();
  ExactPoly2 p = z * z - z + c;
  CHECK(p.z_degree() == 2);
  CHECK(p.c_degree() == 1);
  CHECK(p.coeff(0, 1) == 1);
  CHECK(p.coeff(1, 0) == -1);
  CHECK((p - p).is_zero());
  CHECK(p.dz() == ExactPoly2::constant(2) * z - ExactPoly2::constant(1));
  CHECK(p.at_c(3) == IntPoly{3, -1, 1});
  CHECK(std::abs(p.evaluate(cplx(0.25), cplx(0.5))) < 1e-15);
}

TEST_CASE("iterates have bounded weight") {
  // With z of weight 1 and c of weight d, f^k has weight at most d^k.
  for (int d = 2; d <= 3; ++d)
    for (int k = 1; k <= 4; ++k) {
      ExactPoly2 f = iterate_poly(d, k);
      int dk = 1;
      for (int i = 0; i < k; ++i) dk *= d;
      CHECK(f.z_degree() == dk);
      for (int i = 0; i <= f.z_degree(); ++i)
        for (int j = 0; j <= f.c_degree(); ++j)
          if (f.coeff(i, j) != 0) CHECK(i + d * j <= dk);
    }
  CHECK_THROWS_AS(iterate_poly(3, 7), Error);
}

TEST_CASE("dynatomic division") {
  const ExactPoly2 z = ExactPoly2::z(), c = ExactPoly2::c();
  CHECK(dynatomic_factor(2, 1, 1) == ExactPoly2::constant(1));
  // X_1 closure: f_c(z) - z = 0 iff c = z - z^2.
  CHECK(iterate_poly(2, 1) - z == z * z - z + c);
  CHECK(dynatomic_factor(2, 1, 2) == z * z + z + c + ExactPoly2::constant(1));
  ExactPoly2 q = dynatomic_factor(3, 1, 2);
  CHECK(q.z_degree() == 6);

  for (int d = 2; d <= 3; ++d)
    for (int m = 1; m <= 3; ++m)
      for (int s = 1; m * s <= (d == 2 ? 6 : 4); ++s) {
        const ExactPoly2 big = iterate_poly(d, m * s) - z;
        const ExactPoly2 small = iterate_poly(d, m) - z;
        CHECK(small * dynatomic_factor(d, m, s) == big);
      }
}

TEST_CASE("resultants") {
  // Direct expansion: prod (2 z_i - 1) over the roots of z^2 - z + c is 4c - 1.
  CHECK(parabolic_resultant(2, 1) == IntPoly{-1, 4});
  CHECK(resultant_bareiss(IntPoly{-1, 0, 1}, IntPoly{0, 1}) == -1);
  // Res(z - 2, z - 3) = (2 - 3).
  CHECK(resultant_bareiss(IntPoly{-2, 1}, IntPoly{-3, 1}) == -1);

  // Two independent routes agree: modular interpolation vs Sylvester
  // determinants at integer c.
  for (auto [d, n] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
    const IntPoly x = parabolic_resultant(d, n);
    CHECK(x.size() == static_cast<std::size_t>(n * (d - 1) * (d == 2 ? (1 << (n - 1)) : (n == 2 ? 3 : 9))) + 1);
    const ExactPoly2 p = iterate_poly(d, n) - ExactPoly2::z();
    for (int c0 : {-3, -1, 0, 2, 5}) {
      BigInt direct = resultant_bareiss(p.at_c(c0), p.dz().at_c(c0));
      BigInt value = 0;
      for (std::size_t i = x.size(); i-- > 0;) value = value * c0 + x[i];
      CHECK(value == direct);
    }
  }
}

TEST_CASE("parabolic parameters") {
  auto has = [](const ParabolicSet& s, cplx c) {
    for (const auto& pp : s.parameters)
      if (std::abs(pp.c - c) < 1e-10) return true;
    return false;
  };
  ParabolicSet s1 = parabolic_parameters(2, 1);
  REQUIRE(s1.parameters.size() == 1);
  CHECK(std::abs(s1.parameters[0].c - cplx(0.25)) < 1e-14);
  ParabolicSet s2 = parabolic_parameters(2, 2);
  CHECK(has(s2, -0.75));
  ParabolicSet s3 = parabolic_parameters(2, 3);
  CHECK(has(s3, -1.75));
  // Period-3 parabolic parameters of z^2 + c: -7/4, 1/4 (period 1, order 3
  // multiplier), the rabbit root and its conjugate.
  CHECK(s3.parameters.size() == 4);
  for (const auto* s : {&s1, &s2, &s3})
    for (const auto& pp : s->parameters) {
      CHECK(pp.residual_value < 1e-8);
      CHECK(pp.residual_derivative < 1e-8);
    }
}

TEST_CASE("squarefree decomposition") {
  // 6 (z - 1)^2 (z + 2)^3 (2z + 1)
  IntPoly p{6};
  auto times = [](const IntPoly& a, const IntPoly& b) {
    IntPoly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
  };
  for (int k = 0; k < 2; ++k) p = times(p, {-1, 1});
  for (int k = 0; k < 3; ++k) p = times(p, {2, 1});
  p = times(p, {1, 2});
  const auto parts = squarefree_decomposition(p);
  REQUIRE(parts.size() == 3);
  CHECK(parts[0].multiplicity == 1);
  CHECK(parts[0].factor == IntPoly{1, 2});
  CHECK(parts[1].multiplicity == 2);
  CHECK(parts[1].factor == IntPoly{-1, 1});
  CHECK(parts[2].multiplicity == 3);
  CHECK(parts[2].factor == IntPoly{2, 1});

  // Multiplicities of X recombine to its degree.
  const IntPoly x = parabolic_resultant(2, 4);
  std::size_t total = 0;
  for (const auto& part : squarefree_decomposition(x))
    total += static_cast<std::size_t>(part.multiplicity) * (part.factor.size() - 1);
  CHECK(total == x.size() - 1);
}

TEST_CASE("parabolic parameter counts") {
  // Distinct c with a cycle of period p | n and multiplier of order n / p.
  CHECK(parabolic_parameters(2, 4).parameters.size() == 8);
  CHECK(parabolic_parameters(2, 5).parameters.size() == 16);
  CHECK(parabolic_parameters(3, 2).parameters.size() == 6);
}
