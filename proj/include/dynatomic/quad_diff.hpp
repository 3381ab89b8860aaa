#pragma once

// Quadratic differentials q dz^2 on C whose q is a finite sum of principal
// parts of order <= 2, their pushforward under f_c(z) = z^d + c, the norm
// ||Q||_U = integral over U of |q|, and the two smoothness certificates
// built from them.

#include <random>
#include <vector>

#include "dynatomic/config.hpp"
#include "dynatomic/poly_dynamics.hpp"

namespace dynatomic {

/// c2 / (z - a)^2 + c1 / (z - a).
struct PoleTerm {
  cplx a;
  cplx c2;
  cplx c1;
};

class QuadDiff {
 public:
  QuadDiff() = default;
  explicit QuadDiff(const std::vector<PoleTerm>& terms, const Tolerances& tol = {});

  /// Poles within tol.pole_merge combine (the earlier pole is kept); a new
  /// pole within tol.pole_collision of an existing one throws PoleCollision.
  /// Terms whose coefficients are both exactly zero are dropped.
  void add(const PoleTerm& term, const Tolerances& tol = {});

  const std::vector<PoleTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  bool has_double_pole() const;

  /// q(z).
  cplx operator()(cplx z) const;
  QuadDiff scaled(cplx factor) const;
  QuadDiff plus(const QuadDiff& other, const Tolerances& tol = {}) const;
  QuadDiff minus(const QuadDiff& other, const Tolerances& tol = {}) const;

  /// Largest |c2| or |c1| over all terms; 0 for the zero differential.
  double max_coefficient() const;

 private:
  std::vector<PoleTerm> terms_;
};

/// `poles` terms with poles uniform in |z| < 1.5, at least 0.1 from 0 and
/// 0.05 from each other; coefficients uniform in the square of half-side 1,
/// c2 = 0 unless `double_poles`.
QuadDiff random_quad_diff(std::mt19937_64& rng, int poles, bool double_poles);

/// Closed-form f_* Q for f = z^d + c, by linearity over terms:
///   dz^2/z -> 0,
///   1/(z-a) -> (1/f'(a)) (1/(z-f(a)) - 1/(z-c)),
///   1/(z-a)^2 -> 1/(z-f(a))^2 - (d-1)/(a f'(a)) (1/(z-f(a)) - 1/(z-c)).
/// A pole within tol.pole_merge of 0 counts as a pole at 0; a double pole
/// there throws DoublePoleAtZero.
QuadDiff pushforward(int degree, cplx c, const QuadDiff& q, const Tolerances& tol = {});

/// Tq(z) = sum over the d solutions of f(w) = z of q(w) / f'(w)^2.
/// Throws NearCriticalValue when |z - c| < 1e-8 (1 + |c|), and
/// InvalidArgument when a preimage lies on a pole of q.
cplx pushforward_bruteforce(int degree, cplx c, const QuadDiff& q, cplx z);

/// {inner < |z - center| < outer}; a disk when inner = 0.
struct Region {
  cplx center;
  double inner = 0;
  double outer = 1;
};

struct NormEstimate {
  double value = 0;
  /// Estimated absolute quadrature error.
  double error = 0;
};

/// ||Q||_region by adaptive Gauss-Legendre cubature in polar coordinates
/// about the region center; cells are split where the estimate is worst,
/// which concentrates them at simple poles. Throws DoublePoleInRegion when
/// a double pole lies in the closed region.
NormEstimate qd_norm(const QuadDiff& q, const Region& region, double rel_tol = 1e-6);

struct ContractionReport {
  double radius = 0;
  /// ||f_* Q||_V, ||Q||_U and ||Q||_V with U = f^{-1}(V), V = {|z| < R}.
  NormEstimate pushed;
  NormEstimate preimage;
  NormEstimate full;
  /// Radius of the smallest disk about 0 containing U.
  double preimage_radius = 0;
  /// pushed <= preimage < full, each with a margin exceeding the summed
  /// quadrature errors.
  bool holds = false;
};

/// Throws RegionNotCompactlyContained unless (R + |c|)^{1/d} < R, and
/// InvalidArgument for the zero differential or double poles.
ContractionReport contraction_check(int degree, cplx c, const QuadDiff& q, double radius);

struct Case2Report {
  int ell = 0;
  /// z_0 ... z_{ell-1}.
  std::vector<cplx> orbit;
  /// rho_k = delta_{ell-1} ... delta_k.
  std::vector<cplx> rho;
  QuadDiff q;
  QuadDiff pushed;
  /// Largest coefficient of f_*Q - Q + dP/dc dz^2/(z - c0).
  double residual = 0;
  /// d/dc (f_c^ell(z0) - z0) at c0, from the recurrence along the orbit.
  cplx dP_dc;
};

/// Requires |f^ell(z0) - z0| <= tol.pole_merge and |(f^ell)'(z0) - 1| <=
/// tol.multiplier, else throws NotParabolic.
Case2Report case2_certificate(int degree, cplx c0, cplx z0, int ell, const Config& cfg = {});

struct MuTuple {
  std::vector<cplx> mu;
  /// |mu_m - mu_0| / max(1, |mu_0|) after running the recursion once round.
  double closure = 0;
  /// 1 / |1 - 1/rho|: amplification of the cyclic solve.
  double conditioning = 0;
};

/// The unique cyclic solution of mu_{k+1} = mu_k / (d z_k^{d-1}) -
/// (d-1) / (d z_k^d). Throws MultiplierOne when |rho - 1| <= tol.multiplier
/// and InvalidArgument when the cycle passes through 0.
MuTuple solve_mu(int degree, const std::vector<cplx>& orbit, const Tolerances& tol = {});

struct DoublePoleReport {
  int m = 0;
  std::vector<cplx> orbit;
  cplx rho;
  /// d rho / dc along the continued periodic branch, from central
  /// differences with one Richardson step.
  cplx rho_dot;
  MuTuple mu;
  QuadDiff q;
  QuadDiff pushed;
  /// Largest coefficient of f_*Q - Q + (rho_dot / rho) dz^2/(z - c0).
  double residual = 0;
  /// sum_k mu_{k+1}, to be compared with rho_dot / rho.
  cplx mu_sum;
};

/// Requires z0 periodic of period dividing m with |f^m(z0) - z0| <=
/// tol.pole_merge (else NotParabolic) and multiplier rho != 1.
DoublePoleReport double_pole_certificate(int degree, cplx c0, cplx z0, int m, const Config& cfg = {});

/// Multiplier at c of the m-periodic point found by Newton on f_c^m(z) - z
/// from z0.
cplx continued_multiplier(int degree, cplx c, cplx z0, int m);

}  // namespace dynatomic
