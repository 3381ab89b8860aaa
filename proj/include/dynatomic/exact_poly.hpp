#pragma once

// Exact integer polynomials in (c, z): iterates f_c^k(z), the quotient
// (f^{ms} - z) / (f^m - z), and the resultant X(c) = Res_z(P_n, dP_n/dz)
// whose roots are the parabolic parameters of period dividing n.

#include <cstdint>
#include <vector>

#include "dynatomic/config.hpp"
#include "dynatomic/poly_dynamics.hpp"
#include "dynatomic/symbolic.hpp"

namespace dynatomic {

/// Univariate integer polynomial, coefficients by increasing degree, no
/// trailing zeros (the zero polynomial is empty).
using IntPoly = std::vector<BigInt>;

/// sum_{i,j} a_{ij} z^i c^j with integer coefficients, stored as rows by
/// z-degree of coefficient polynomials in c. Canonical: no trailing zero
/// rows and no trailing zeros inside a row.
class ExactPoly2 {
 public:
  ExactPoly2() = default;
  static ExactPoly2 constant(const BigInt& a);
  static ExactPoly2 z();
  static ExactPoly2 c();

  bool is_zero() const { return rows_.empty(); }
  /// -1 for the zero polynomial.
  int z_degree() const { return static_cast<int>(rows_.size()) - 1; }
  int c_degree() const;
  /// Coefficient of z^i c^j (zero outside the support).
  BigInt coeff(int i, int j) const;
  /// Coefficient of z^i as a polynomial in c.
  const IntPoly& row(int i) const;
  std::size_t term_count() const;

  void add_term(int i, int j, const BigInt& a);

  ExactPoly2 operator+(const ExactPoly2& o) const;
  ExactPoly2 operator-(const ExactPoly2& o) const;
  ExactPoly2 operator*(const ExactPoly2& o) const;
  friend bool operator==(const ExactPoly2&, const ExactPoly2&) = default;

  /// Partial derivative in z.
  ExactPoly2 dz() const;
  /// Substitutes an integer c; result is a polynomial in z.
  IntPoly at_c(const BigInt& c) const;
  /// Coefficients in z reduced mod p at c = c0 mod p.
  std::vector<std::uint64_t> at_c_mod(std::uint64_t c0, std::uint64_t p) const;
  cplx evaluate(cplx c, cplx z) const;

 private:
  void normalize();
  std::vector<IntPoly> rows_;
};

/// f_c^k(z). Throws BudgetExceeded when d^k exceeds the exact budget.
ExactPoly2 iterate_poly(int degree, int k, const Budgets& budget = {});

struct Division {
  ExactPoly2 quotient;
  ExactPoly2 remainder;
};
/// Long division in z by a divisor whose leading z-coefficient is 1.
Division divide_monic_z(const ExactPoly2& numerator, const ExactPoly2& divisor);

/// P with f^{ms}(z) - z = (f^m(z) - z) P. Throws Internal if the remainder
/// is not zero.
ExactPoly2 dynatomic_factor(int degree, int m, int s, const Budgets& budget = {});

/// Resultant of two integer polynomials in z, by Sylvester determinant
/// with fraction-free (Bareiss) elimination. Cost O((deg a + deg b)^3).
BigInt resultant_bareiss(const IntPoly& a, const IntPoly& b);

/// X(c) = Res_z(f^n(z) - z, (f^n)'(z) - 1) computed by evaluation at
/// integer c mod word-size primes, interpolation and Chinese remaindering.
IntPoly parabolic_resultant(int degree, int n, const Budgets& budget = {});

struct ParabolicParameter {
  cplx c;
  /// A point of the parabolic cycle.
  cplx z;
  /// Period of the parabolic cycle.
  int period = 0;
  /// Multiplier of the parabolic cycle (a root of unity of order n/period).
  cplx multiplier;
  /// Multiplicity as a root of X.
  int multiplicity = 0;
  /// |f^n(z) - z| and |(f^n)'(z) - 1| after refinement.
  double residual_value = 0;
  double residual_derivative = 0;
};

struct ParabolicSet {
  int degree = 2;
  int n = 1;
  IntPoly resultant;
  std::vector<ParabolicParameter> parameters;
};

/// Numerical roots of the resultant, each refined as a parabolic pair
/// (c, z); sorted by (re c, im c).
ParabolicSet parabolic_parameters(int degree, int n, const Config& cfg = {});

struct SquarefreeFactor {
  /// Primitive, squarefree, positive leading coefficient.
  IntPoly factor;
  int multiplicity = 1;
};
/// p = content * prod factor_m^m with pairwise coprime factors; constant
/// factors are omitted.
std::vector<SquarefreeFactor> squarefree_decomposition(const IntPoly& p);

/// Roots of an integer polynomial with multiplicity, by Aberth iteration
/// in 50-digit arithmetic.
std::vector<cplx> integer_poly_roots(const IntPoly& p);

}  // namespace dynatomic
