#pragma once

// Every numerical constant the library uses, gathered in one record so the
// CLI can override them from a JSON config file.

#include <cstdint>
#include <string>

namespace dynatomic {

struct Tolerances {
  /// Relative residual accepted for a root of f^n(z) - z.
  double residual = 1e-10;
  /// Two ray landing estimates closer than this are the same point.
  double landing = 1e-4;
  /// Orbit matching in splitting reports uses max(cluster * r^2, 1e-10).
  double cluster = 10.0;
  /// Poles of a quadratic differential closer than this are merged.
  double pole_merge = 1e-9;
  /// Distinct poles closer than this (but beyond pole_merge) abort.
  double pole_collision = 1e-6;
  /// |rho^s - 1| accepted for a parabolic multiplier.
  double multiplier = 1e-6;
  /// Distance accepted between an extrapolated ray tail and its polished
  /// landing point (parabolic landing converges slowly).
  double slow_landing = 1e-3;
};

struct RaySchedule {
  /// |f^k| at which the Boettcher coordinate is replaced by f^k itself.
  double escape_radius = 1e10;
  /// Rungs of the potential ladder per halving of the potential.
  int rungs_per_halving = 8;
  /// Final potential of the sampled ray.
  double target_potential = 1e-8;
  /// Periodic rays continue past the target down to potential
  /// exp(-landing_depth); near parabolic points the tail approaches its
  /// limit like 1/log(1/potential).
  double landing_depth = 400;
  /// Step in log-potential along the tail, relative to the log-potential.
  double landing_step = 0.005;
  /// Tail checkpoints, spaced by the factor 1.25 in log-potential, used for
  /// Richardson extrapolation in 1/log(1/potential).
  int landing_samples = 8;
  int max_newton = 64;
  /// Halvings of a rung allowed after Newton failure.
  int max_step_halvings = 24;
};

struct Budgets {
  /// Upper limit on d^n for word enumeration.
  std::uint64_t words = 1u << 22;
  /// Upper limit on d^k for exact iterates f_c^k (d <= 3, k <= 6).
  std::uint64_t exact_degree = 729;
  /// Upper limit on d^n for the exact resultant (d <= 3, n <= 4).
  std::uint64_t resultant_degree = 81;
  int max_root_sweeps = 4000;
};

struct Config {
  Tolerances tol;
  RaySchedule rays;
  Budgets budgets;
  std::string output_dir = ".";
  std::uint64_t seed = 0;
  /// 0 means "use the hardware concurrency".
  unsigned threads = 0;
};

/// Process-wide thread cap used by parallel_for; 0 means hardware concurrency.
void set_thread_cap(unsigned cap);
unsigned thread_cap();

}  // namespace dynatomic
