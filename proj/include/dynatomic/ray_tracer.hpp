#pragma once

// External rays of z^d + c. Both kinds are traced by Newton continuation down
// a geometric ladder of potentials: a point at potential G and angle t solves
// f^k(x) = exp(d^k G + 2 pi i d^k t) once d^k G exceeds log(escape radius),
// where the Boettcher coordinate agrees with the identity to working
// precision. For parameter rays x = c and the orbit starts at c itself.

#include <optional>
#include <string>
#include <vector>

#include "dynatomic/config.hpp"
#include "dynatomic/poly_dynamics.hpp"
#include "dynatomic/symbolic.hpp"

namespace dynatomic {

struct RayPath {
  Angle angle{0, 1, 2};
  bool parameter = false;
  /// Parameter of the dynamical plane; unused for parameter rays.
  cplx c;
  /// Ordered by strictly decreasing potential.
  std::vector<cplx> samples;
  std::vector<double> potentials;
  /// Largest relative residual of the ray equation over accepted samples.
  double max_residual = 0;
  /// Periodic rays only: points at log-potentials tail_depths (= -log G)
  /// beyond the target potential, increasing depth.
  std::vector<cplx> tail;
  std::vector<double> tail_depths;
  /// Every accepted step of the tail, increasing depth; a dense polyline
  /// from the last sample towards the landing point.
  std::vector<cplx> approach;
  std::vector<double> approach_depths;
  /// Richardson extrapolation of the tail to infinite depth (the deepest
  /// sample when there is no tail).
  cplx raw_landing;
  /// For periodic angles the polished landing point (parabolic parameter or
  /// periodic point), otherwise raw_landing.
  cplx landing_estimate;
  /// Landing at a parabolic point converges slowly in the potential; the
  /// polish is accepted within the relaxed tolerance.
  bool slow = false;
  bool converged = false;
  /// Set when a dynamical ray runs into an iterated preimage of 0.
  std::optional<cplx> bifurcation;
};

/// R_c(t) from the escape radius down to target_potential.
RayPath trace_dynamical_ray(cplx c, const Angle& t, double target_potential, const Config& cfg = {});

/// Parameter ray of angle theta (theta != 0) down to target_potential.
/// Throws NewtonDivergence when the ladder cannot proceed.
RayPath trace_parameter_ray(const Angle& theta, double target_potential, const Config& cfg = {});

/// Sample point of the parameter ray at a single potential.
cplx parameter_ray_point(const Angle& theta, double potential, const Config& cfg = {});

/// "potential,re,im" lines with a header.
std::string ray_csv(const RayPath& ray);

/// SVG with one polyline per ray inside the square [-extent, extent]^2.
std::string rays_svg(const std::vector<RayPath>& rays, double extent);

}  // namespace dynatomic
