#pragma once

// Combinatorial monodromy of exact-period-n itineraries: the moves produced
// by turning around primitive and special parabolic parameters, the loop
// construction connecting any orbit to the special orbit, and the
// transitivity check built from all such moves.

#include <cstdint>
#include <map>
#include <vector>

#include "dynatomic/parabolic.hpp"

namespace dynatomic {

enum class MoveKind { Transposition, Cycle };

std::string_view to_string(MoveKind k);

/// One counterclockwise turn (winding 1) around gamma(center).
///
/// A Transposition exchanges the points with itineraries a and b, and with
/// them their whole orbits: sigma^r(a) <-> sigma^r(b) for every r, since
/// continuation commutes with the dynamics. A Cycle sends every point x of
/// the orbit of a to sigma^shift(x).
struct MonodromyMove {
  Angle center;
  MoveKind kind = MoveKind::Transposition;
  Word a;
  Word b;  // Transposition only; equal to a for cycles.
  int shift = 0;
  int winding = 1;

  /// Image of the point with itinerary x.
  Word apply(const Word& x) const;
  /// Non-trivial cycles of the induced permutation, each starting at its
  /// lexicographically least element, sorted.
  std::vector<std::vector<Word>> cycles() const;
};

struct ConnectionPlan {
  Word source;
  Word target;
  std::vector<MonodromyMove> moves;
  /// Digit sum of the tracked itinerary before the first and after every
  /// macro-step.
  std::vector<int> digit_sums;

  Word apply(const Word& x) const;
};

struct TransitivityReport {
  int degree = 2;
  int n = 2;
  bool connected = false;
  std::size_t vertices = 0;
  std::size_t components = 0;
  std::size_t moves = 0;
};

MonodromyMove move_for_primitive(const Angle& theta);
MonodromyMove special_cycle_move(int degree, int n);
ConnectionPlan connect(int degree, int n, const Word& start);
/// Every move the engine knows for period n: one per maximal angle of
/// period n (a beta chain for satellite candidates), plus the special cycle.
std::vector<MonodromyMove> all_moves(int degree, int n);
TransitivityReport transitivity_certificate(int degree, int n, std::uint64_t budget = 1u << 22);

/// Offset r with w == m.rotate(r) where m = w.max_rotation().
std::size_t offset_from_max(const Word& w);

}  // namespace dynatomic
