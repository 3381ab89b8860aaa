#pragma once

// Analytic continuation of the whole root set of f_c^n(z) = z along paths in
// the parameter plane, itinerary labels for exact-period-n roots at
// parameters outside the Multibrot set, and the permutation induced by a
// loop around a parabolic parameter compared with the combinatorial
// prediction.

#include <optional>
#include <vector>

#include "dynatomic/config.hpp"
#include "dynatomic/monodromy_engine.hpp"
#include "dynatomic/poly_dynamics.hpp"

namespace dynatomic {

struct LabeledRoots {
  int degree = 2;
  int n = 1;
  cplx c;
  /// All d^n roots of f_c^n(z) - z.
  std::vector<cplx> roots;
  /// Itinerary of each exact-period-n root; empty for lower periods.
  std::vector<std::optional<Word>> labels;
};

/// Labels at c = parameter_ray_point(theta_base, potential). For one angle t
/// per exact-period-n orbit the dynamical ray R_c(t) is traced and its
/// landing point matched to the nearest root; the label of f^j of that root
/// is itinerary_of_angle(tau^j(t), theta_base, n). Orbits whose rays stall
/// on the critical orbit or land on a lower period get their labels from the
/// complete set at angle 1 / (2 (d^n - 1)), continued along the equipotential;
/// the transported labels must agree with the traced ones. Throws
/// UnmatchedRoot when a root cannot be matched unambiguously or an
/// exact-period-n root stays unlabeled, and LabelConflict when a root
/// receives two labels.
LabeledRoots label_roots(const Angle& theta_base, double potential, int n, const Config& cfg = {});

struct ContinuationStats {
  std::size_t steps = 0;
  std::size_t rejected = 0;
  /// Smallest pairwise root distance met along the way.
  double min_separation = INFINITY;
};

/// Continues every root along the polyline through `path` (path[0] is the
/// parameter of `roots`) by Euler prediction and at most 5 Newton
/// corrections, halving the step until every root moves by less than 0.3
/// times its distance to the nearest other root. Output order follows the
/// input. Throws StepUnderflow when the step vanishes.
std::vector<cplx> continue_roots(int degree, int n, std::vector<cplx> roots, const std::vector<cplx>& path,
                                 ContinuationStats* stats = nullptr);

/// Vertices of the circle c0 + r e^{i(phase + 2 pi s)}, s from 0 to turns
/// (clockwise for negative turns); closed: the last vertex is the first.
std::vector<cplx> circle_path(cplx c0, double radius, double phase, int turns);

struct PermutationReport {
  int degree = 2;
  int n = 1;
  cplx center;
  double radius = 0;
  cplx base;
  int turns = 1;
  std::vector<cplx> roots;
  std::vector<std::optional<Word>> labels;
  /// Root i continues around the loop to root observed[i].
  std::vector<std::size_t> observed;
  /// Non-trivial cycles on labels in the format of MonodromyMove::cycles.
  std::vector<std::vector<Word>> observed_cycles;
  std::vector<std::vector<Word>> predicted_cycles;
  bool has_prediction = false;
  /// Observed equals the prediction on every labeled root.
  bool match = false;
  ContinuationStats stats;

  bool is_identity() const;
};

/// Continues `base` (roots at c0 + r e^{i phase}) |turns| times around the
/// circle and reads off the permutation. With a prediction, the expected
/// image of label w is move.apply applied `turns` times (its inverse for
/// negative turns). Throws TrackingAmbiguity when the final roots do not
/// match the initial ones one-to-one.
PermutationReport loop_permutation(cplx c0, double radius, double phase, const LabeledRoots& base, int turns = 1,
                                   const std::optional<MonodromyMove>& prediction = std::nullopt);

struct MonodromyExperiment {
  Angle theta{0, 1, 2};
  /// gamma(theta), polished.
  cplx center;
  /// Angle of the label point, 1 / (2 (d^n - 1)).
  Angle label_angle{0, 1, 2};
  /// From the label point along an equipotential to the ray theta, down the
  /// ray and its tail, then radially onto the circle.
  std::vector<cplx> transport;
  /// Parabolic parameters of ray period n other than the center closer than
  /// this to it; must exceed the transport's closing radius.
  double isolation = INFINITY;
  PermutationReport report;
};

/// The full check for a turn around gamma(theta): predicted by
/// special_cycle_move or move_for_primitive. Throws NotPrimitive for
/// satellite angles other than the special one, and InvalidArgument when
/// another parabolic parameter lies inside the loop or transport disk.
MonodromyExperiment monodromy_experiment(const Angle& theta, double radius, int turns = 1, const Config& cfg = {});

}  // namespace dynatomic
