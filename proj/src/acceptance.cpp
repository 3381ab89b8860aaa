#include "dynatomic/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>

#include "dynatomic/error.hpp"
#include "dynatomic/exact_poly.hpp"
#include "dynatomic/monodromy_engine.hpp"
#include "dynatomic/numeric_monodromy.hpp"
#include "dynatomic/parabolic.hpp"
#include "dynatomic/poly_dynamics.hpp"
#include "dynatomic/quad_diff.hpp"
#include "dynatomic/ray_tracer.hpp"
#include "dynatomic/symbolic.hpp"

namespace dynatomic {

namespace {

constexpr double pi = std::numbers::pi;

std::string fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, value);
  return buf;
}

struct Checks {
  CriterionResult& out;
  void require(bool ok, const std::string& what) {
    if (!ok) out.failures.push_back(what);
  }
  void measure(const std::string& what) { out.measurements.push_back(what); }
};

cplx random_point(std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> u(-r, r);
  return {u(rng), u(rng)};
}

// All words of the given length over d letters, in lexicographic order.
void for_each_word(int d, std::size_t len, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> w(len, 0);
  while (true) {
    fn(w);
    std::size_t i = len;
    while (i > 0 && w[i - 1] == d - 1) w[--i] = 0;
    if (i == 0) return;
    ++w[i - 1];
  }
}

// Smallest t dividing the length with w = (w[0..t))^(len/t), by a direct scan.
std::size_t root_length_oracle(const std::vector<int>& w) {
  const std::size_t n = w.size();
  for (std::size_t t = 1; t <= n; ++t) {
    if (n % t) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = w[i] == w[i % t];
    if (ok) return t;
  }
  return n;
}

void kneading_golden(Checks& ck, const Config&) {
  const struct {
    int p, q, d;
    const char* nu;
  } cases[] = {{1, 7, 3, "12102*"}, {27, 28, 3, "22200*"}, {28, 31, 4, "3213*"}, {13, 14, 3, "22100*"}};
  for (const auto& c : cases) {
    const std::string got = kneading_sequence(Angle(c.p, c.q, c.d)).to_string();
    ck.require(got == c.nu, "nu(" + std::to_string(c.p) + "/" + std::to_string(c.q) + ") = " + got);
  }
}

void realization(Checks& ck, const Config&) {
  std::size_t angles = 0, exceptions = 0;
  for (int d = 2; d <= 5; ++d)
    for (int n = 2; n <= 8; ++n)
      for (const Word& w : primitive_words(d, n)) {
        if (!(w.max_rotation() == w)) continue;
        ++angles;
        const Angle theta = angle_from_word(w);
        const KneadingSequence nu = kneading_sequence(theta);
        const std::vector<int> prefix(w.digits().begin(), w.digits().end() - 1);
        const bool ok = d_expansion(theta) == w && nu.body == prefix && w.back() <= d - 2;
        if (!ok && ++exceptions <= 5) ck.require(false, "exception at " + theta.to_string() + " (d=" + std::to_string(d) + ")");
      }
  ck.measure(std::to_string(angles) + " maximal periodic angles, " + std::to_string(exceptions) + " exceptions");
  ck.require(exceptions == 0, std::to_string(exceptions) + " exceptions");
}

void word_combinatorics(Checks& ck, const Config& cfg) {
  // Primitive roots against the divisor scan on random proper powers.
  std::mt19937_64 rng(cfg.seed);
  std::size_t bad_roots = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 4);
    const std::size_t base = 1 + rng() % 6, reps = 1 + rng() % 4;
    std::vector<int> root(base);
    for (int& e : root) e = static_cast<int>(rng() % static_cast<std::uint64_t>(d));
    std::vector<int> w;
    for (std::size_t k = 0; k < reps; ++k) w.insert(w.end(), root.begin(), root.end());
    const PrimitiveRoot pr = primitive_root(Word(w, d));
    if (pr.root.size() != root_length_oracle(w) || pr.root.repeat(static_cast<std::size_t>(pr.power)).digits() != w)
      ++bad_roots;
  }
  ck.require(bad_roots == 0, std::to_string(bad_roots) + " primitive roots disagree with the divisor scan");

  // Changing the last digit of a proper power gives a primitive word.
  std::size_t powers = 0, bad_changes = 0;
  for (int d = 2; d <= 4; ++d)
    for (std::size_t len = 2; len <= 16; ++len)
      for (std::size_t t = 1; t < len; ++t) {
        if (len % t) continue;
        for_each_word(d, t, [&](const std::vector<int>& r) {
          if (root_length_oracle(r) != t) return;  // each proper power once, by its primitive root
          const Word w = Word(r, d).repeat(len / t);
          ++powers;
          for (int e = 0; e < d; ++e)
            if (e != w.back() && root_length_oracle(w.with_last(e).digits()) != len) ++bad_changes;
        });
      }
  ck.require(bad_changes == 0, std::to_string(bad_changes) + " last-digit changes are not primitive");

  // At most one (w, s) with s >= 2 and w primitive writes nu = w^{s-1} w_*,
  // and cyclic_expression finds it.
  std::size_t bodies = 0, ambiguous = 0, mismatched = 0;
  for (int d = 2; d <= 4; ++d)
    for (std::size_t n = 2; n <= 8; ++n)
      for_each_word(d, n - 1, [&](const std::vector<int>& body) {
        ++bodies;
        std::vector<std::size_t> found;
        for (std::size_t t = 1; t < n; ++t) {
          if (n % t) continue;
          bool ok = true;
          for (std::size_t i = 0; i < n - 1 && ok; ++i) ok = body[i] == body[i % t];
          if (ok && root_length_oracle(std::vector<int>(body.begin(), body.begin() + static_cast<long>(t))) == t)
            found.push_back(t);
        }
        if (found.size() > 1) ++ambiguous;
        KneadingSequence nu;
        nu.body = body;
        nu.degree = d;
        const auto ce = cyclic_expression(nu);
        const bool agree = found.empty() ? !ce
                                         : ce && ce->w.size() == found.front() &&
                                               ce->s == static_cast<int>(n / found.front());
        if (!agree) ++mismatched;
      });
  ck.measure(std::to_string(powers) + " proper powers, " + std::to_string(bodies) + " kneading bodies");
  ck.require(ambiguous == 0, std::to_string(ambiguous) + " kneading bodies with two cyclic expressions");
  ck.require(mismatched == 0, std::to_string(mismatched) + " cyclic expressions disagree with the scan");
}

void connectivity(Checks& ck, const Config& cfg) {
  std::size_t plans = 0, worst_increase = 0;
  for (int d = 2; d <= 4; ++d)
    for (int n = 2; n <= 7; ++n) {
      const Word special = special_word(d, n);
      const int bound = (d - 1) * n - 1;
      std::size_t bad = 0;
      for (const Word& w : primitive_words(d, n)) {
        ++plans;
        const ConnectionPlan plan = connect(d, n, w);
        bool ok = plan.apply(w) == plan.target && plan.target.max_rotation() == special;
        for (std::size_t i = 1; i < plan.digit_sums.size(); ++i) ok = ok && plan.digit_sums[i] > plan.digit_sums[i - 1];
        const int increase = plan.digit_sums.back() - plan.digit_sums.front();
        ok = ok && increase <= bound;
        worst_increase = std::max(worst_increase, static_cast<std::size_t>(increase));
        if (!ok) ++bad;
      }
      ck.require(bad == 0, "d=" + std::to_string(d) + " n=" + std::to_string(n) + ": " + std::to_string(bad) +
                               " plans fail");
      const TransitivityReport tr = transitivity_certificate(d, n, cfg.budgets.words);
      ck.require(tr.connected, "d=" + std::to_string(d) + " n=" + std::to_string(n) + " not transitive");
    }
  ck.measure(std::to_string(plans) + " plans, largest digit-sum increase " + std::to_string(worst_increase));
}

void levin(Checks& ck, const Config& cfg) {
  std::mt19937_64 rng(cfg.seed + 1);
  double worst = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 3;
    const cplx c = random_point(rng, 1);
    const QuadDiff q = random_quad_diff(rng, 1 + trial % 4, trial % 2 == 0);
    const QuadDiff p = pushforward(d, c, q);
    for (int i = 0; i < 100; ++i) {
      const cplx z = random_point(rng, 2.5);
      const cplx exact = pushforward_bruteforce(d, c, q, z);
      worst = std::max(worst, std::abs(p(z) - exact) / std::abs(exact));
    }
  }
  ck.measure("worst relative error " + fmt("%.3g", worst));
  ck.require(worst < 1e-9, "relative error " + fmt("%.3g", worst));
  for (int d = 2; d <= 5; ++d)
    for (cplx c : {cplx(0), cplx(-0.75), cplx(0.3, 0.4)})
      ck.require(pushforward(d, c, QuadDiff({{0.0, 0.0, 1.0}})).empty(), "f_*(dz^2/z) is not zero");
}

void norms(Checks& ck, const Config& cfg) {
  const QuadDiff inv({{0.0, 0.0, 1.0}});
  for (double r : {1.0, 2.5}) {
    const NormEstimate n = qd_norm(inv, {0.0, 0, r});
    const double rel = std::abs(n.value - 2 * pi * r) / (2 * pi * r);
    ck.measure("R=" + fmt("%g", r) + ": relative error " + fmt("%.3g", rel));
    ck.require(rel < 1e-3, "norm of dz^2/z off by " + fmt("%.3g", rel));
  }
  std::mt19937_64 rng(cfg.seed + 2);
  double smallest = INFINITY;
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + trial % 2;
    const cplx c = random_point(rng, 0.5);
    const ContractionReport r = contraction_check(d, c, random_quad_diff(rng, 1 + trial % 4, false), 3.0);
    ck.require(r.holds, "contraction fails at trial " + std::to_string(trial));
    smallest = std::min(smallest, (r.full.value - r.pushed.value) / r.full.value);
  }
  ck.measure("smallest relative margin ||Q||_V - ||f_*Q||_V: " + fmt("%.3g", smallest));
}

void division(Checks& ck, const Config& cfg) {
  const ExactPoly2 z = ExactPoly2::z();
  for (int d = 2; d <= 3; ++d)
    for (int m = 1; m <= 6; ++m)
      for (int s = 1; m * s <= 6; ++s) {
        const Division div = divide_monic_z(iterate_poly(d, m * s, cfg.budgets) - z, iterate_poly(d, m, cfg.budgets) - z);
        ck.require(div.remainder.is_zero(), "non-zero remainder at d=" + std::to_string(d) + " m=" +
                                                std::to_string(m) + " s=" + std::to_string(s));
      }
  ck.require(dynatomic_factor(2, 1, 1, cfg.budgets) == ExactPoly2::constant(1), "quotient at d=2, m=s=1 is not 1");
  // f_c(z) - z = z^2 - z + c vanishes exactly on c = z - z^2.
  ExactPoly2 closure = z * z - z + ExactPoly2::c();
  ck.require(iterate_poly(2, 1, cfg.budgets) - z == closure, "f_c(z) - z differs from z^2 - z + c");
}

void enumeration(Checks& ck, const Config& cfg) {
  const std::pair<int, double> expected[] = {{1, 0.25}, {2, -0.75}, {3, -1.75}};
  for (auto [n, target] : expected) {
    const ParabolicSet s = parabolic_parameters(2, n, cfg);
    double best = INFINITY, worst_residual = 0;
    for (const auto& p : s.parameters) {
      best = std::min(best, std::abs(p.c - target));
      worst_residual = std::max({worst_residual, p.residual_value, p.residual_derivative});
    }
    ck.measure("n=" + std::to_string(n) + ": " + std::to_string(s.parameters.size()) + " parameters, distance to " +
               fmt("%g", target) + " " + fmt("%.3g", best) + ", residual " + fmt("%.3g", worst_residual));
    ck.require(best < 1e-10, "c=" + fmt("%g", target) + " missing for n=" + std::to_string(n));
    ck.require(worst_residual < 1e-8, "residual " + fmt("%.3g", worst_residual) + " for n=" + std::to_string(n));
  }
}

void certificates(Checks& ck, const Config& cfg) {
  auto case2 = [&](const std::string& name, int d, cplx c0, cplx z0, int ell) {
    const Case2Report r = case2_certificate(d, c0, z0, ell, cfg);
    ck.measure(name + ": residual " + fmt("%.3g", r.residual) + ", |dP/dc| " + fmt("%.4g", std::abs(r.dP_dc)));
    ck.require(r.residual < 1e-6 && std::abs(r.dP_dc) > 0.05, name + " certificate fails");
  };
  case2("case 2 (1/4, 1/2, 1)", 2, 0.25, 0.5, 1);
  const ParabolicPoint p3 = locate_parabolic(2, -1.75, 3, cfg);
  case2("case 2 (-7/4, period 3)", 2, p3.c, p3.z, 3);
  const ParabolicPoint p9 = locate_parabolic(3, trace_parameter_ray(Angle(9, 26, 3), cfg.rays.target_potential, cfg).landing_estimate, 3, cfg);
  ck.require(p9.period == 3, "gamma(9/26) is not primitive of period 3");
  case2("case 2 gamma(9/26), d=3", 3, p9.c, p9.z, 3);

  const DoublePoleReport a = double_pole_certificate(2, -0.75, -0.5, 1, cfg);
  ck.measure("double pole (-3/4, -1/2): rho' " + fmt("%.12g", a.rho_dot.real()) + ", residual " + fmt("%.3g", a.residual));
  ck.require(std::abs(a.rho_dot - 1.0) < 1e-6 && a.residual < 1e-10, "double pole certificate at -3/4 fails");
  const cplx w = std::polar(1.0, 2 * pi / 3);
  const DoublePoleReport b = double_pole_certificate(2, w / 2.0 - w * w / 4.0, w / 2.0, 1, cfg);
  ck.measure("double pole at the rabbit root: |rho'| " + fmt("%.6g", std::abs(b.rho_dot)) + ", residual " +
             fmt("%.3g", b.residual));
  ck.require(std::abs(b.rho_dot) > 0.1 && b.residual < 1e-8, "double pole certificate at the rabbit root fails");

  const JetReport j = jet_normal_form(2, -0.75, -0.5, 1, 2, cfg);
  const double worst = std::max({std::abs(j.iterate.a0), std::abs(j.iterate.a2), std::abs(j.iterate.a1 - 1.0)});
  ck.measure("jet of f^2 at -1/2, c=-3/4: deviation from z + O(z^3) " + fmt("%.3g", worst));
  ck.require(worst < 1e-8, "jet deviates by " + fmt("%.3g", worst));
}

void landing(Checks& ck, const Config& cfg) {
  auto land = [&](int p, int q, int d) { return trace_parameter_ray(Angle(p, q, d), cfg.rays.target_potential, cfg); };
  const struct {
    int p1, p2, q, d;
  } pairs[] = {{7, 9, 26, 3}, {11, 19, 80, 3}, {1, 4, 15, 4}};
  for (const auto& pr : pairs) {
    const RayPath a = land(pr.p1, pr.q, pr.d), b = land(pr.p2, pr.q, pr.d);
    // Raw: the extrapolated tails before either is polished onto a parabolic.
    const double gap = std::abs(a.landing_estimate - b.landing_estimate);
    const double raw = std::abs(a.raw_landing - b.raw_landing);
    const std::string name = "d=" + std::to_string(pr.d) + " " + std::to_string(pr.p1) + "/" + std::to_string(pr.q) +
                             " & " + std::to_string(pr.p2) + "/" + std::to_string(pr.q);
    ck.measure(name + ": gap " + fmt("%.3g", gap) + ", raw gap " + fmt("%.3g", raw));
    ck.require(a.converged && b.converged && gap < 1e-4 && raw < 1e-4, name + " land " + fmt("%.3g", raw) + " apart");
  }
  const RayPath r = land(2, 3, 2);
  const double miss = std::abs(r.landing_estimate + 0.75), raw = std::abs(r.raw_landing + 0.75);
  ck.measure("d=2 2/3: distance to -3/4 " + fmt("%.3g", miss) + ", raw " + fmt("%.3g", raw));
  ck.require(r.converged && miss < 1e-4 && raw < 1e-4, "ray 2/3 misses -3/4 by " + fmt("%.3g", raw));
}

void splitting(Checks& ck, const Config& cfg) {
  const SplitReport a = orbit_splitting(2, -0.75, 2, 1e-3, cfg);
  ck.require(a.lengths == std::vector<int>{1, 2}, "split lengths at -3/4 are not (1, 2)");
  const SplitReport b = orbit_splitting(2, -1.75, 3, 1e-3, cfg);
  ck.require(b.lengths == std::vector<int>{3, 3}, "split lengths at -7/4 are not (3, 3)");
}

std::string cycles_text(const std::vector<std::vector<Word>>& cycles) {
  std::string out;
  for (const auto& cy : cycles) {
    out += "(";
    for (std::size_t i = 0; i < cy.size(); ++i) out += (i ? " " : "") + cy[i].to_string();
    out += ")";
  }
  return out.empty() ? "id" : out;
}

void monodromy(Checks& ck, const Config& cfg) {
  const struct {
    int p, q, d;
    const char* required;  // a cycle that must appear
  } cases[] = {{4, 7, 2, "(100 101)"}, {6, 7, 2, "(011 101 110)"}, {3, 4, 3, "(20 21)"}, {79, 80, 3, "(1222 2122 2212 2221)"}};
  for (const auto& c : cases) {
    const MonodromyExperiment ex = monodromy_experiment(Angle(c.p, c.q, c.d), 1e-2, 1, cfg);
    const std::string seen = cycles_text(ex.report.observed_cycles);
    const std::string name = "d=" + std::to_string(c.d) + " gamma(" + std::to_string(c.p) + "/" + std::to_string(c.q) + ")";
    ck.measure(name + ": observed " + seen + ", predicted " + cycles_text(ex.report.predicted_cycles));
    ck.require(ex.report.match, name + ": observed differs from prediction");
    ck.require(seen.find(c.required) != std::string::npos, name + ": no cycle " + c.required);
  }
  LabeledRoots generic;
  generic.degree = 2;
  generic.n = 3;
  generic.c = cplx(0.3, 0.6) + 1e-2;
  generic.roots = periodic_points(2, generic.c, 3, cfg);
  generic.labels.assign(generic.roots.size(), std::nullopt);
  const PermutationReport id = loop_permutation(cplx(0.3, 0.6), 1e-2, 0.0, generic);
  ck.require(id.is_identity(), "loop around the generic point 0.3+0.6i is not the identity");
}

struct Criterion {
  const char* title;
  double budget;
  void (*run)(Checks&, const Config&);
};

const Criterion criteria[criterion_count] = {
    {"kneading golden values", 1, kneading_golden},
    {"realization of kneading sequences", 60, realization},
    {"primitive roots and cyclic expressions", 60, word_combinatorics},
    {"connectivity of the monodromy graph", 120, connectivity},
    {"closed-form pushforward", 10, levin},
    {"norm identity and contraction", 30, norms},
    {"exact dynatomic division", 30, division},
    {"parabolic enumeration", 30, enumeration},
    {"smoothness certificates", 60, certificates},
    {"parameter ray landing", 120, landing},
    {"orbit splitting", 30, splitting},
    {"numeric monodromy", 300, monodromy},
};

}  // namespace

CriterionResult run_criterion(int id, const Config& cfg) {
  if (id < 1 || id > criterion_count) fail(ErrorKind::InvalidArgument, "no criterion " + std::to_string(id));
  const Criterion& c = criteria[id - 1];
  CriterionResult out;
  out.id = id;
  out.title = c.title;
  out.budget = c.budget;
  Checks ck{out};
  const auto start = std::chrono::steady_clock::now();
  try {
    c.run(ck, cfg);
  } catch (const std::exception& e) {
    out.failures.push_back(std::string("threw ") + e.what());
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (out.seconds >= out.budget) out.measurements.push_back("over the " + fmt("%g", out.budget) + " s budget");
  return out;
}

std::vector<CriterionResult> run_acceptance(const Config& cfg, const std::vector<int>& ids) {
  std::vector<CriterionResult> out;
  if (ids.empty())
    for (int id = 1; id <= criterion_count; ++id) out.push_back(run_criterion(id, cfg));
  else
    for (int id : ids) out.push_back(run_criterion(id, cfg));
  return out;
}

}  // namespace dynatomic
