#pragma once

// Primitive/satellite classification of landing points of periodic
// parameter rays, computed purely from kneading arithmetic.

#include <optional>
#include <vector>

#include "dynatomic/symbolic.hpp"

namespace dynatomic {

enum class Verdict { PrimitiveCertified, SatelliteCandidate, SpecialSatellite };

std::string_view to_string(Verdict v);

struct ParabolicClass {
  Verdict verdict = Verdict::PrimitiveCertified;
  Angle theta;
  KneadingSequence kneading;
  /// Present for SatelliteCandidate, and for SpecialSatellite whose kneading
  /// sequence is always cyclic with w = (d-1).
  std::optional<CyclicExpression> witness;
  /// Companion angle, SpecialSatellite only.
  std::optional<Angle> eta;
};

struct BetaAngle {
  /// The index j of beta_j; -1 for the wrap-around angle.
  int index = 0;
  Angle angle;
  /// Last digits of the itinerary pair exchanged by a turn around gamma(beta_j):
  /// j <-> j+1 (mod d).
  int lower = 0;
  int upper = 0;
};

/// beta_{nu_t-2}, ..., beta_0, beta_{-1} in that order.
struct BetaFamily {
  Angle theta;
  CyclicExpression witness;
  std::vector<BetaAngle> betas;
};

/// Digits of t, tau(t), ... in the partition cut at (theta+k)/d; throws
/// BoundaryHit if an iterate lands on a cut point.
Word itinerary_of_angle(const Angle& t, const Angle& theta, std::size_t length);

/// Requires theta periodic of exact period >= 2 and maximal in its orbit.
ParabolicClass classify_angle(const Angle& theta);

/// The necessary conditions for gamma(theta) to be a satellite root, for any
/// periodic angle of period >= 2 (maximal or not). False means gamma(theta)
/// is certified primitive.
bool satisfies_satellite_criterion(const Angle& theta);

BetaFamily beta_family(const Angle& theta);

struct SpecialData {
  Angle theta;
  Angle eta;
};
SpecialData special_data(int degree, int n);

bool is_special_angle(const Angle& theta);

}  // namespace dynatomic
