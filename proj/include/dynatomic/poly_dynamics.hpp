#pragma once

// Numerical dynamics of f_c(z) = z^d + c: orbits and multipliers, the
// c-derivative of f_c^n, simultaneous solving for all periodic points,
// order-3 jets at parabolic cycles and the splitting of parabolic cycles
// under perturbation of c.

#include <complex>
#include <vector>

#include "dynatomic/config.hpp"
#include "dynatomic/error.hpp"

namespace dynatomic {

using cplx = std::complex<double>;
using cplxl = std::complex<long double>;

/// z^d by repeated squaring.
template <class T>
std::complex<T> ipow(std::complex<T> z, int d) {
  std::complex<T> r(1);
  while (d > 0) {
    if (d & 1) r *= z;
    z *= z;
    d >>= 1;
  }
  return r;
}

struct OrbitData {
  int degree = 2;
  cplx c;
  /// z_0 ... z_length.
  std::vector<cplx> z;
  /// delta_k = d z_k^{d-1}, k = 0 ... length-1.
  std::vector<cplx> delta;
  /// Product of all delta_k.
  cplx rho;
};

OrbitData orbit_data(int degree, cplx c, cplx z0, int length);

/// f_c^n(z) together with its z- and c-derivatives.
struct IterateJet {
  cplxl value;
  cplxl dz;
  cplxl dc;
};
IterateJet iterate_with_derivatives(int degree, cplxl c, cplxl z, int n);

/// d/dc f_c^n(z) = 1 + delta_{n-1} + delta_{n-1} delta_{n-2} + ... + delta_{n-1}...delta_1.
cplx dPn_dc(int degree, cplx c, cplx z, int n);

struct PeriodicRoot {
  cplx z;
  /// |f^n(z) - z| divided by the rounding scale max(1, |z| |(f^n)'(z)|).
  double residual = 0;
};

/// All d^n roots of f_c^n(z) - z with multiplicity, sorted by (re, im).
std::vector<PeriodicRoot> periodic_roots(int degree, cplx c, int n, const Config& cfg = {});
std::vector<cplx> periodic_points(int degree, cplx c, int n, const Config& cfg = {});

/// Smallest m dividing n with |f^m(z) - z| <= tol (1 + |z|).
int exact_period(int degree, cplx c, cplx z, int n, double tol = 1e-8);

/// Roots of exact period n, in the order of periodic_points.
std::vector<cplx> exact_period_points(int degree, cplx c, int n, const Config& cfg = {});

/// Truncated power series a0 + a1 w + a2 w^2 (orders >= 3 dropped).
struct Jet3 {
  cplx a0, a1, a2;

  Jet3 operator+(const Jet3& o) const { return {a0 + o.a0, a1 + o.a1, a2 + o.a2}; }
  Jet3 operator*(const Jet3& o) const {
    return {a0 * o.a0, a0 * o.a1 + a1 * o.a0, a0 * o.a2 + a1 * o.a1 + a2 * o.a0};
  }
  /// (*this)(inner(w)) for inner with a0 small: the outer series is
  /// expanded at 0 and evaluated at the full inner series.
  Jet3 compose(const Jet3& inner) const;
};

struct JetReport {
  cplx rho;
  /// Jet at 0 of F(w) = f^m(z0 + w) - z0.
  Jet3 first_return;
  /// Jet of F^s obtained by composing first_return s times.
  Jet3 iterate;
  /// rho^s w + a rho^{s-1} (1 + rho + ... + rho^{s-1}) w^2 from the closed form.
  Jet3 predicted;
};

/// Requires z0 m-periodic with multiplier rho, rho^s = 1, rho != 1.
/// Throws MultiplierMismatch otherwise.
JetReport jet_normal_form(int degree, cplx c0, cplx z0, int m, int s, const Config& cfg = {});

/// Newton on {f^p(z) - z, (f^p)'(z) - omega} in (c, z). Returns the refined
/// pair; throws NonConvergence if it does not converge.
std::pair<cplx, cplx> refine_parabolic(int degree, cplx c, cplx z, int p, cplx omega, int max_iter = 60);

struct ParabolicPoint {
  cplx c;
  /// A point of the parabolic cycle.
  cplx z;
  int period = 0;
  /// Root of unity of order n / period.
  cplx multiplier;
};

/// The parabolic pair (c0, z0) of ray period n nearest to c: the colliding
/// periodic points at c locate the cycle, then refine_parabolic polishes.
/// Throws NonConvergence when c is not in the basin of a parabolic pair.
ParabolicPoint locate_parabolic(int degree, cplx c, int n, const Config& cfg = {});

struct SplitReport {
  cplx center;
  double radius = 0;
  int n = 0;
  /// Period of the parabolic cycle at the center (min over clusters).
  int parabolic_period = 0;
  /// Lengths of the cycles born from the parabolic cycle, sorted.
  std::vector<int> lengths;
};

/// Perturbs c0 to c0 + r e^{i phi} for several phi and groups the roots of
/// f^n(z) = z that emerge from the multiple roots at c0 into cycles.
/// Throws ClusterAmbiguous when the split roots are not separated from the
/// rest, or when different phi disagree.
SplitReport orbit_splitting(int degree, cplx c0, int n, double r, const Config& cfg = {});

}  // namespace dynatomic
