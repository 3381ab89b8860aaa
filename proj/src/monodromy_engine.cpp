#include "dynatomic/monodromy_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace dynatomic {

std::string_view to_string(MoveKind k) { return k == MoveKind::Transposition ? "transposition" : "cycle"; }

namespace {

std::optional<std::size_t> rotation_offset(const Word& from, const Word& to) {
  if (from.size() != to.size()) return std::nullopt;
  for (std::size_t r = 0; r < from.size(); ++r)
    if (from.rotate(r) == to) return r;
  return std::nullopt;
}

int mod(int a, int m) { return ((a % m) + m) % m; }

}  // namespace

Word MonodromyMove::apply(const Word& x) const {
  if (kind == MoveKind::Transposition) {
    if (winding % 2 == 0) return x;
    if (auto r = rotation_offset(a, x)) return b.rotate(*r);
    if (auto r = rotation_offset(b, x)) return a.rotate(*r);
    return x;
  }
  if (!rotation_offset(a, x)) return x;
  const int n = static_cast<int>(a.size());
  return x.rotate(static_cast<std::size_t>(mod(shift * winding, n)));
}

std::vector<std::vector<Word>> MonodromyMove::cycles() const {
  std::set<Word> support;
  for (std::size_t r = 0; r < a.size(); ++r) {
    support.insert(a.rotate(r));
    if (kind == MoveKind::Transposition) support.insert(b.rotate(r));
  }
  std::set<Word> seen;
  std::vector<std::vector<Word>> out;
  for (const Word& start : support) {
    if (seen.count(start)) continue;
    std::vector<Word> cycle{start};
    seen.insert(start);
    for (Word x = apply(start); x != start; x = apply(x)) {
      cycle.push_back(x);
      seen.insert(x);
    }
    if (cycle.size() > 1) out.push_back(std::move(cycle));
  }
  return out;
}

Word ConnectionPlan::apply(const Word& x) const {
  Word y = x;
  for (const auto& m : moves) y = m.apply(y);
  return y;
}

std::size_t offset_from_max(const Word& w) {
  auto r = rotation_offset(w.max_rotation(), w);
  return *r;
}

MonodromyMove move_for_primitive(const Angle& theta) {
  const int n = theta.period();
  if (n < 2) fail(ErrorKind::PeriodOne, theta.to_string() + " has period 1");
  if (maximal_in_orbit(theta).is_max) {
    if (classify_angle(theta).verdict != Verdict::PrimitiveCertified)
      fail(ErrorKind::NotPrimitive, theta.to_string() + " is not primitive-certified");
  } else if (satisfies_satellite_criterion(theta)) {
    fail(ErrorKind::NotPrimitive, theta.to_string() + " is not primitive-certified");
  }
  const int d = theta.degree();
  KneadingSequence nu = kneading_sequence(theta);
  const int k = d_expansion(theta).back();
  std::vector<int> digits = nu.body;
  digits.push_back(k);
  Word a(digits, d);
  digits.back() = (k + 1) % d;
  Word b(std::move(digits), d);
  if (!a.is_primitive() || !b.is_primitive())
    fail(ErrorKind::Internal, "move at " + theta.to_string() + " exchanges " + a.to_string() + " and " + b.to_string() +
                                  ", which are not both of exact period " + std::to_string(n));
  return MonodromyMove{theta, MoveKind::Transposition, std::move(a), std::move(b), 0, 1};
}

MonodromyMove special_cycle_move(int degree, int n) {
  SpecialData sd = special_data(degree, n);
  Word a = special_word(degree, n);
  // The rays landing at the parabolic fixed point are permuted with
  // rotation number -1/n; one counterclockwise turn of c advances the split
  // points by the inverse of that rotation.
  return MonodromyMove{sd.theta, MoveKind::Cycle, a, a, n - 1, 1};
}

ConnectionPlan connect(int degree, int n, const Word& start) {
  if (start.degree() != degree) fail(ErrorKind::DegreeMismatch, "start itinerary has the wrong degree");
  if (static_cast<int>(start.size()) != n || !start.is_primitive())
    fail(ErrorKind::NotExactPeriod, start.to_string() + " does not have exact period " + std::to_string(n));

  const Word special = special_word(degree, n);
  const int bound = (degree - 1) * n - 1;
  ConnectionPlan plan{start, start, {}, {start.digit_sum()}};
  Word x = start;
  while (true) {
    const Word m = x.max_rotation();
    if (m == special) break;
    const Angle theta = angle_from_word(m);
    const ParabolicClass cls = classify_angle(theta);
    if (cls.verdict == Verdict::PrimitiveCertified) {
      plan.moves.push_back(move_for_primitive(theta));
      x = plan.moves.back().apply(x);
    } else if (cls.verdict == Verdict::SatelliteCandidate) {
      for (const BetaAngle& beta : beta_family(theta).betas) {
        plan.moves.push_back(move_for_primitive(beta.angle));
        x = plan.moves.back().apply(x);
      }
    } else {
      break;
    }
    const int sum = x.digit_sum();
    if (sum <= plan.digit_sums.back())
      fail(ErrorKind::Internal, "digit sum did not increase at " + x.to_string());
    if (sum > bound) fail(ErrorKind::Internal, "digit sum exceeds (d-1)n-1 at " + x.to_string());
    plan.digit_sums.push_back(sum);
  }
  plan.target = x;
  return plan;
}

std::vector<MonodromyMove> all_moves(int degree, int n) {
  std::vector<MonodromyMove> moves;
  for (const Word& w : primitive_words(degree, n)) {
    if (w.max_rotation() != w) continue;
    const Angle theta = angle_from_word(w);
    const ParabolicClass cls = classify_angle(theta);
    switch (cls.verdict) {
      case Verdict::PrimitiveCertified:
        moves.push_back(move_for_primitive(theta));
        break;
      case Verdict::SatelliteCandidate:
        for (const BetaAngle& beta : beta_family(theta).betas) moves.push_back(move_for_primitive(beta.angle));
        break;
      case Verdict::SpecialSatellite:
        moves.push_back(special_cycle_move(degree, n));
        break;
    }
  }
  return moves;
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

std::size_t encode(const Word& w) {
  std::size_t code = 0;
  for (int e : w.digits()) code = code * static_cast<std::size_t>(w.degree()) + static_cast<std::size_t>(e);
  return code;
}

}  // namespace

TransitivityReport transitivity_certificate(int degree, int n, std::uint64_t budget) {
  if (n < 2) fail(ErrorKind::InvalidArgument, "transitivity needs n >= 2");
  double size = std::pow(static_cast<double>(degree), n);
  if (size > static_cast<double>(budget))
    fail(ErrorKind::BudgetExceeded, std::to_string(degree) + "^" + std::to_string(n) + " words exceed the budget");

  const std::vector<Word> vertices = primitive_words(degree, n);
  std::vector<std::size_t> index(static_cast<std::size_t>(size), SIZE_MAX);
  for (std::size_t i = 0; i < vertices.size(); ++i) index[encode(vertices[i])] = i;

  DisjointSets sets(vertices.size());
  const std::vector<MonodromyMove> moves = all_moves(degree, n);
  for (const MonodromyMove& mv : moves) {
    for (std::size_t r = 0; r < static_cast<std::size_t>(n); ++r) {
      const Word x = mv.a.rotate(r);
      const Word y = mv.apply(x);
      sets.unite(index.at(encode(x)), index.at(encode(y)));
    }
  }
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < vertices.size(); ++i) roots.insert(sets.find(i));

  TransitivityReport report;
  report.degree = degree;
  report.n = n;
  report.vertices = vertices.size();
  report.components = roots.size();
  report.connected = roots.size() == 1;
  report.moves = moves.size();
  return report;
}

}  // namespace dynatomic
