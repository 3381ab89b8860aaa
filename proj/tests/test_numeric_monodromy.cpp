#include <algorithm>
#include <set>

#include "doctest.h"
#include "dynatomic/numeric_monodromy.hpp"
#include "dynatomic/parabolic.hpp"
#include "dynatomic/ray_tracer.hpp"

using namespace dynatomic;

namespace {

std::set<std::string> label_set(const LabeledRoots& lr) {
  std::set<std::string> out;
  for (const auto& l : lr.labels)
    if (l) out.insert(l->to_string());
  return out;
}

std::size_t labeled_count(const LabeledRoots& lr) {
  return static_cast<std::size_t>(std::count_if(lr.labels.begin(), lr.labels.end(), [](const auto& l) { return l.has_value(); }));
}

// Exact-period-n words over d letters, by brute force.
std::set<std::string> exact_period_words(int d, int n) {
  std::set<std::string> out;
  long total = 1;
  for (int i = 0; i < n; ++i) total *= d;
  for (long code = 0; code < total; ++code) {
    std::string s(n, '0');
    long x = code;
    for (int i = n - 1; i >= 0; --i, x /= d) s[i] = static_cast<char>('0' + x % d);
    bool exact = true;
    for (int p = 1; p < n && exact; ++p)
      if (n % p == 0 && s == s.substr(p) + s.substr(0, p)) exact = false;
    if (exact) out.insert(s);
  }
  return out;
}

std::vector<std::vector<std::string>> as_strings(const std::vector<std::vector<Word>>& cycles) {
  std::vector<std::vector<std::string>> out;
  for (const auto& cy : cycles) {
    out.emplace_back();
    for (const auto& w : cy) out.back().push_back(w.to_string());
  }
  return out;
}

// Roots of the label set at c, unlabeled, for loops that need no labels.
LabeledRoots raw_roots(int d, int n, cplx c) {
  LabeledRoots lr;
  lr.degree = d;
  lr.n = n;
  lr.c = c;
  lr.roots = periodic_points(d, c, n);
  lr.labels.assign(lr.roots.size(), std::nullopt);
  return lr;
}

}  // namespace

TEST_CASE("labels at small base angles cover every exact-period word") {
  for (auto [d, n] : {std::pair{2, 2}, {2, 3}, {3, 2}, {2, 4}, {3, 3}}) {
    long period_den = 1;
    for (int i = 0; i < n; ++i) period_den *= d;
    const Angle base(1, 2 * (period_den - 1), d);
    const LabeledRoots lr = label_roots(base, 1.0, n);
    CHECK(lr.roots.size() == static_cast<std::size_t>(period_den));
    const auto expected = exact_period_words(d, n);
    CHECK(labeled_count(lr) == expected.size());
    CHECK(label_set(lr) == expected);
  }
}

TEST_CASE("labels on the rays of the examples") {
  SUBCASE("d=2 ray 6/7, n=3") {
    const LabeledRoots lr = label_roots(Angle::parse("6/7", 2), 0.5, 3);
    CHECK(labeled_count(lr) == 6);
    CHECK(label_set(lr) == exact_period_words(2, 3));
  }
  SUBCASE("d=2 ray 2/3, n=2") {
    const LabeledRoots lr = label_roots(Angle::parse("2/3", 2), 0.5, 2);
    CHECK(labeled_count(lr) == 2);
    CHECK(label_set(lr) == std::set<std::string>{"01", "10"});
  }
  SUBCASE("d=3 ray 3/4, n=2: inside a wake two period-2 rays co-land on a fixed point") {
    const LabeledRoots lr = label_roots(Angle::parse("3/4", 3), 0.5, 2);
    CHECK(labeled_count(lr) == 6);
    CHECK(label_set(lr) == exact_period_words(3, 2));
  }
  SUBCASE("labels are carried by exact-period roots only") {
    const LabeledRoots lr = label_roots(Angle(1, 14, 2), 1.0, 3);
    for (std::size_t i = 0; i < lr.roots.size(); ++i) {
      const cplx z = lr.roots[i];
      const bool fixed = std::abs(z * z + lr.c - z) < 1e-8;
      CHECK(lr.labels[i].has_value() == !fixed);
    }
  }
}

TEST_CASE("continuation along a path is reversible") {
  const cplx c0(0.3, 0.8);
  const LabeledRoots lr = raw_roots(2, 4, c0);
  const std::vector<cplx> there{c0, cplx(0.5, 1.0), cplx(0.9, 0.4)};
  const std::vector<cplx> back{cplx(0.9, 0.4), cplx(0.5, 1.0), c0};
  ContinuationStats stats;
  const auto moved = continue_roots(2, 4, lr.roots, there, &stats);
  const auto home = continue_roots(2, 4, moved, back);
  for (std::size_t i = 0; i < home.size(); ++i) CHECK(std::abs(home[i] - lr.roots[i]) < 1e-10);
  CHECK(stats.steps > 0);
  for (const cplx z : moved) {
    cplx w = z;
    for (int k = 0; k < 4; ++k) w = w * w + cplx(0.9, 0.4);
    CHECK(std::abs(w - z) < 1e-10);
  }
}

TEST_CASE("circle path is closed and oriented") {
  const auto ccw = circle_path(cplx(1, 2), 0.5, 0.3, 1);
  const auto cw = circle_path(cplx(1, 2), 0.5, 0.3, -1);
  CHECK(std::abs(ccw.front() - ccw.back()) < 1e-15);
  CHECK(std::abs(ccw.front() - (cplx(1, 2) + std::polar(0.5, 0.3))) < 1e-15);
  CHECK(std::imag((ccw[1] - cplx(1, 2)) / (ccw[0] - cplx(1, 2))) > 0);
  CHECK(std::imag((cw[1] - cplx(1, 2)) / (cw[0] - cplx(1, 2))) < 0);
  CHECK(circle_path(0, 1, 0, 2).size() == 2 * (ccw.size() - 1) + 1);
}

TEST_CASE("a loop around a generic parameter is the identity") {
  for (auto [d, n, c] : {std::tuple{2, 3, cplx(0.3, 0.6)}, {2, 4, cplx(-0.2, 0.4)}, {3, 3, cplx(0.1, 0.9)}}) {
    const cplx base = c + 1e-2;
    const PermutationReport r = loop_permutation(c, 1e-2, 0.0, raw_roots(d, n, base));
    CHECK(r.is_identity());
    CHECK(r.observed_cycles.empty());
  }
}

TEST_CASE("d=2 primitive parabolic -7/4, n=3: one transposition") {
  const MonodromyExperiment ex = monodromy_experiment(Angle::parse("4/7", 2), 1e-2);
  CHECK(std::abs(ex.center - cplx(-1.75, 0)) < 1e-10);
  const auto& r = ex.report;
  CHECK(r.has_prediction);
  CHECK(r.match);
  CHECK(as_strings(r.predicted_cycles) == as_strings(r.observed_cycles));
  // The move swaps 100 and 101; the rest of their orbits follow.
  const auto cycles = as_strings(r.observed_cycles);
  CHECK(std::find(cycles.begin(), cycles.end(), std::vector<std::string>{"100", "101"}) != cycles.end());
  for (const auto& cy : cycles) CHECK(cy.size() == 2);
}

TEST_CASE("d=2 satellite parabolics cycle the orbit") {
  SUBCASE("2/3 at -3/4") {
    const auto ex = monodromy_experiment(Angle::parse("2/3", 2), 1e-2);
    CHECK(std::abs(ex.center - cplx(-0.75, 0)) < 1e-8);
    CHECK(ex.report.match);
    CHECK(as_strings(ex.report.observed_cycles) == std::vector<std::vector<std::string>>{{"01", "10"}});
  }
  SUBCASE("6/7") {
    const auto ex = monodromy_experiment(Angle::parse("6/7", 2), 1e-2);
    CHECK(ex.report.match);
    CHECK(as_strings(ex.report.observed_cycles) == std::vector<std::vector<std::string>>{{"011", "101", "110"}});
  }
}

TEST_CASE("d=3 parabolics") {
  SUBCASE("3/4, n=2") {
    const auto ex = monodromy_experiment(Angle::parse("3/4", 3), 1e-2);
    CHECK(ex.report.match);
    const auto cycles = as_strings(ex.report.observed_cycles);
    CHECK(std::find(cycles.begin(), cycles.end(), std::vector<std::string>{"20", "21"}) != cycles.end());
  }
  SUBCASE("79/80, n=4") {
    const auto ex = monodromy_experiment(Angle::parse("79/80", 3), 1e-2);
    CHECK(ex.report.match);
    CHECK(ex.isolation > 1e-2);
    CHECK(as_strings(ex.report.observed_cycles) ==
          std::vector<std::vector<std::string>>{{"1222", "2122", "2212", "2221"}});
  }
}

TEST_CASE("two turns give the square, reversed turns the inverse") {
  const MonodromyExperiment once = monodromy_experiment(Angle::parse("6/7", 2), 1e-2, 1);
  const MonodromyExperiment twice = monodromy_experiment(Angle::parse("6/7", 2), 1e-2, 2);
  const MonodromyExperiment back = monodromy_experiment(Angle::parse("6/7", 2), 1e-2, -1);
  const auto& p = once.report.observed;
  REQUIRE(twice.report.roots.size() == p.size());
  REQUIRE(back.report.roots.size() == p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    // Root indices agree because the three runs share the transport.
    CHECK(std::abs(twice.report.roots[i] - once.report.roots[i]) < 1e-12);
    CHECK(twice.report.observed[i] == p[p[i]]);
    CHECK(p[back.report.observed[i]] == i);
  }
  CHECK(twice.report.match);
  CHECK(back.report.match);
}

TEST_CASE("loops that would enclose another parabolic parameter are refused") {
  CHECK_THROWS_AS(monodromy_experiment(Angle::parse("79/80", 3), 0.2), Error);
}
