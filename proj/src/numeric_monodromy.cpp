#include "dynatomic/numeric_monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "dynatomic/exact_poly.hpp"
#include "dynatomic/parabolic.hpp"
#include "dynatomic/parallel.hpp"
#include "dynatomic/ray_tracer.hpp"

namespace dynatomic {

namespace {

cplxl to_long(cplx z) { return {z.real(), z.imag()}; }
cplx to_double(cplxl z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

std::size_t nearest(const std::vector<cplx>& pts, cplx z, double* best = nullptr, double* second = nullptr) {
  std::size_t idx = 0;
  double b = INFINITY, s = INFINITY;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double dist = std::abs(pts[i] - z);
    if (dist < b) {
      s = b;
      b = dist;
      idx = i;
    } else if (dist < s) {
      s = dist;
    }
  }
  if (best) *best = b;
  if (second) *second = s;
  return idx;
}

// Distance from each point to its nearest neighbour.
std::vector<double> separations(const std::vector<cplxl>& z) {
  std::vector<double> sep(z.size(), INFINITY);
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      const double dist = static_cast<double>(std::abs(z[i] - z[j]));
      sep[i] = std::min(sep[i], dist);
      sep[j] = std::min(sep[j], dist);
    }
  return sep;
}

// Potential of the label point and of the equipotential leading to the ray
// theta: far enough out that chords between vertices 1/512 of a turn apart
// stay clear of the Multibrot set.
constexpr double label_potential = 1.0;
constexpr double equipotential_vertices = 512;
// Dynamical rays used for labels are traced this far below the potential of c.
constexpr double label_depth_factor = 1e-4;
constexpr double safety = 0.3;

}  // namespace

namespace {

// Below the smallest non-zero period-n angle 1/(d^n - 1) no wake of ray
// period <= n begins, so at parameters on this ray distinct period-n rays
// land at distinct points and their itineraries are exactly the primitive
// words.
Angle safe_label_angle(int d, int n) {
  const BigInt period_den = boost::multiprecision::pow(BigInt(d), static_cast<unsigned>(n)) - 1;
  return Angle(BigInt(1), 2 * period_den, d);
}

// Points of the equipotential at `potential` from angle `from` to angle `to`
// without crossing angle 0, about 512 vertices per turn.
std::vector<cplx> equipotential_path(const Angle& from, const Angle& to, double potential, const Config& cfg) {
  const int d = from.degree();
  const BigInt lo = from.numerator() * to.denominator(), hi = to.numerator() * from.denominator();
  const BigInt den = from.denominator() * to.denominator();
  const auto pieces = std::max(
      1L, static_cast<long>(std::ceil(equipotential_vertices * std::abs(to.to_double() - from.to_double()))));
  std::vector<cplx> out;
  for (long j = 0; j <= pieces; ++j)
    out.push_back(parameter_ray_point(Angle(lo * (pieces - j) + hi * j, den * pieces, d), potential, cfg));
  return out;
}

}  // namespace

LabeledRoots label_roots(const Angle& theta_base, double potential, int n, const Config& cfg) {
  const int d = theta_base.degree();
  LabeledRoots out;
  out.degree = d;
  out.n = n;
  out.c = parameter_ray_point(theta_base, potential, cfg);
  out.roots = periodic_points(d, out.c, n, cfg);
  out.labels.assign(out.roots.size(), std::nullopt);
  std::vector<bool> exact(out.roots.size());
  for (std::size_t k = 0; k < out.roots.size(); ++k) exact[k] = exact_period(d, out.c, out.roots[k], n) == n;

  std::vector<Angle> reps;
  for (const Word& w : primitive_words(d, n))
    if (w == w.max_rotation()) reps.push_back(angle_from_word(w));
  std::vector<std::optional<cplx>> landing(reps.size());
  parallel_for(reps.size(), [&](std::size_t i) {
    try {
      const RayPath r = trace_dynamical_ray(out.c, reps[i], potential * label_depth_factor, cfg);
      if (r.converged && !r.bifurcation) landing[i] = r.landing_estimate;
    } catch (const Error&) {
      // Rays through the critical orbit stall; their orbit is labeled below.
    }
  });

  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (!landing[i]) continue;
    // Match the whole orbit first; inside a wake it may land on a lower period.
    std::vector<std::size_t> hit;
    cplx z = *landing[i];
    for (int j = 0; j < n; ++j) {
      double best = 0, second = 0;
      const std::size_t k = nearest(out.roots, z, &best, &second);
      if (!(best < safety * second))
        fail(ErrorKind::UnmatchedRoot, "landing point of ray " + reps[i].to_string() + " has no unambiguous root");
      hit.push_back(k);
      z = ipow(out.roots[k], d) + out.c;
    }
    if (!exact[hit.front()]) continue;
    Angle t = reps[i];
    for (int j = 0; j < n; ++j) {
      Word w = itinerary_of_angle(t, theta_base, static_cast<std::size_t>(n));
      auto& slot = out.labels[hit[j]];
      if (slot && !(*slot == w))
        fail(ErrorKind::LabelConflict, "root labeled " + slot->to_string() + " and " + w.to_string());
      slot = std::move(w);
      t = tau_iterate(t, 1);
    }
  }

  bool complete = true;
  for (std::size_t k = 0; k < out.roots.size(); ++k) complete = complete && (out.labels[k] || !exact[k]);
  const Angle safe = safe_label_angle(d, n);
  if (!complete && !(theta_base == safe)) {
    // Labels extend continuously off M and off the ray at angle 0: carry the
    // complete set from the safe angle along the equipotential.
    const LabeledRoots from = label_roots(safe, potential, n, cfg);
    const std::vector<cplx> path = equipotential_path(safe, theta_base, potential, cfg);
    const std::vector<cplx> moved = continue_roots(d, n, from.roots, path);
    for (std::size_t i = 0; i < moved.size(); ++i) {
      if (!from.labels[i]) continue;
      double best = 0, second = 0;
      const std::size_t k = nearest(out.roots, moved[i], &best, &second);
      if (!(best < safety * second) || !exact[k])
        fail(ErrorKind::UnmatchedRoot, "transported root " + from.labels[i]->to_string() + " has no partner");
      if (out.labels[k] && !(*out.labels[k] == *from.labels[i]))
        fail(ErrorKind::LabelConflict,
             "root labeled " + out.labels[k]->to_string() + " and " + from.labels[i]->to_string());
      out.labels[k] = from.labels[i];
    }
  }
  for (std::size_t k = 0; k < out.roots.size(); ++k)
    if (!out.labels[k] && exact[k])
      fail(ErrorKind::UnmatchedRoot, "an exact-period-" + std::to_string(n) + " root received no label");
  return out;
}

std::vector<cplx> continue_roots(int degree, int n, std::vector<cplx> roots, const std::vector<cplx>& path,
                                 ContinuationStats* stats) {
  ContinuationStats local;
  ContinuationStats& st = stats ? *stats : local;
  std::vector<cplxl> z(roots.size());
  std::transform(roots.begin(), roots.end(), z.begin(), to_long);
  std::vector<cplxl> next(z.size());
  for (std::size_t seg = 0; seg + 1 < path.size(); ++seg) {
    const cplxl a = to_long(path[seg]), b = to_long(path[seg + 1]);
    long double s = 0, ds = 1;
    while (s < 1) {
      ds = std::min(ds, 1 - s);
      const cplxl c_cur = a + s * (b - a);
      const cplxl c_new = a + (s + ds) * (b - a);
      const std::vector<double> sep = separations(z);
      for (double v : sep) st.min_separation = std::min(st.min_separation, v);
      bool ok = true;
      for (std::size_t i = 0; i < z.size() && ok; ++i) {
        const IterateJet j0 = iterate_with_derivatives(degree, c_cur, z[i], n);
        const cplxl pred = z[i] - j0.dc / (j0.dz - 1.0L) * (c_new - c_cur);
        cplxl w = pred;
        bool converged = false;
        for (int it = 0; it < 5 && !converged; ++it) {
          const IterateJet j = iterate_with_derivatives(degree, c_new, w, n);
          const cplxl step = (j.value - w) / (j.dz - 1.0L);
          w -= step;
          converged = std::abs(step) <= 1e-13L * (1 + std::abs(w));
        }
        ok = converged && static_cast<double>(std::abs(w - z[i])) < safety * sep[i] &&
             static_cast<double>(std::abs(w - pred)) < 0.1 * sep[i];
        next[i] = w;
      }
      if (!ok) {
        ++st.rejected;
        ds /= 2;
        if (ds < 1e-12L) fail(ErrorKind::StepUnderflow, "continuation step vanished");
        continue;
      }
      z.swap(next);
      s += ds;
      ++st.steps;
      ds *= 2;
    }
  }
  std::transform(z.begin(), z.end(), roots.begin(), to_double);
  return roots;
}

std::vector<cplx> circle_path(cplx c0, double radius, double phase, int turns) {
  constexpr int per_turn = 64;
  const int count = per_turn * std::abs(turns);
  const double sign = turns < 0 ? -1 : 1;
  std::vector<cplx> out;
  for (int k = 0; k <= count; ++k)
    out.push_back(c0 + std::polar(radius, phase + sign * 2 * std::numbers::pi * k / per_turn));
  out.back() = out.front();
  return out;
}

bool PermutationReport::is_identity() const {
  for (std::size_t i = 0; i < observed.size(); ++i)
    if (observed[i] != i) return false;
  return true;
}

namespace {

// Non-trivial cycles of a partial map on words, least element first, sorted.
std::vector<std::vector<Word>> word_cycles(const std::map<std::string, Word>& image,
                                           const std::map<std::string, Word>& words) {
  std::vector<std::vector<Word>> out;
  std::map<std::string, bool> seen;
  for (const auto& [key, w] : words) {
    if (seen[key]) continue;
    std::vector<Word> cycle;
    std::string cur = key;
    while (!seen[cur]) {
      seen[cur] = true;
      cycle.push_back(words.at(cur));
      auto it = image.find(cur);
      if (it == image.end()) break;
      cur = it->second.to_string();
      if (!words.count(cur)) break;
    }
    if (cycle.size() > 1) out.push_back(std::move(cycle));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), [](const Word& p, const Word& q) {
      return p.to_string() < q.to_string();
    });
  });
  return out;
}

}  // namespace

PermutationReport loop_permutation(cplx c0, double radius, double phase, const LabeledRoots& base, int turns,
                                   const std::optional<MonodromyMove>& prediction) {
  PermutationReport rep;
  rep.degree = base.degree;
  rep.n = base.n;
  rep.center = c0;
  rep.radius = radius;
  rep.base = c0 + std::polar(radius, phase);
  rep.turns = turns;
  rep.roots = base.roots;
  rep.labels = base.labels;
  if (std::abs(rep.base - base.c) > 1e-9 * (1 + std::abs(rep.base)))
    fail(ErrorKind::InvalidArgument, "labeled roots are not at the base point of the loop");

  const std::vector<cplx> end =
      continue_roots(base.degree, base.n, base.roots, circle_path(c0, radius, phase, turns), &rep.stats);
  std::vector<cplxl> start(base.roots.size());
  std::transform(base.roots.begin(), base.roots.end(), start.begin(), to_long);
  const std::vector<double> sep = separations(start);
  rep.observed.assign(end.size(), 0);
  std::vector<bool> hit(end.size(), false);
  for (std::size_t i = 0; i < end.size(); ++i) {
    double best = 0;
    const std::size_t k = nearest(base.roots, end[i], &best);
    if (!(best < safety * sep[k]) || hit[k])
      fail(ErrorKind::TrackingAmbiguity, "continued roots do not return to the root set one-to-one");
    hit[k] = true;
    rep.observed[i] = k;
  }

  std::map<std::string, Word> words, seen_image;
  for (std::size_t i = 0; i < end.size(); ++i)
    if (rep.labels[i]) {
      words.emplace(rep.labels[i]->to_string(), *rep.labels[i]);
      if (const auto& img = rep.labels[rep.observed[i]]) seen_image.emplace(rep.labels[i]->to_string(), *img);
    }
  rep.observed_cycles = word_cycles(seen_image, words);

  if (prediction) {
    rep.has_prediction = true;
    std::map<std::string, Word> predicted;
    for (const auto& [key, w] : words) {
      Word img = w;
      if (turns >= 0) {
        for (int k = 0; k < turns; ++k) img = prediction->apply(img);
      } else {
        // The move is a permutation of the labels; invert by search.
        for (int k = 0; k < -turns; ++k)
          for (const auto& [key2, u] : words)
            if (prediction->apply(u) == img) {
              img = u;
              break;
            }
      }
      predicted.emplace(key, img);
    }
    rep.predicted_cycles = word_cycles(predicted, words);
    rep.match = true;
    for (std::size_t i = 0; i < end.size(); ++i)
      if (rep.labels[i]) {
        const auto& img = rep.labels[rep.observed[i]];
        rep.match = rep.match && img && *img == predicted.at(rep.labels[i]->to_string());
      }
  }
  return rep;
}

MonodromyExperiment monodromy_experiment(const Angle& theta, double radius, int turns, const Config& cfg) {
  const int d = theta.degree();
  const int n = theta.period();
  MonodromyExperiment ex;
  ex.theta = theta;
  const MonodromyMove move = is_special_angle(theta) ? special_cycle_move(d, n) : move_for_primitive(theta);

  const RayPath ray = trace_parameter_ray(theta, cfg.rays.target_potential, cfg);
  if (!ray.converged) fail(ErrorKind::NonConvergence, "parameter ray " + theta.to_string() + " did not land");
  ex.center = ray.landing_estimate;

  // Label point, then counterclockwise along the equipotential to the ray
  // theta, then down the ray and its tail, then radially onto the circle.
  ex.label_angle = safe_label_angle(d, n);
  ex.transport = equipotential_path(ex.label_angle, theta, label_potential, cfg);
  for (std::size_t i = 0; i < ray.samples.size(); ++i)
    if (ray.potentials[i] < label_potential) ex.transport.push_back(ray.samples[i]);
  ex.transport.insert(ex.transport.end(), ray.approach.begin(), ray.approach.end());
  const cplx last = ex.transport.back();
  const double phase = std::arg(last - ex.center);
  const double reach = std::max(radius, std::abs(last - ex.center));
  ex.transport.push_back(ex.center + std::polar(radius, phase));

  if (static_cast<std::uint64_t>(std::pow(d, n)) <= cfg.budgets.resultant_degree) {
    for (const auto& p : parabolic_parameters(d, n, cfg).parameters)
      if (std::abs(p.c - ex.center) > 1e-8) ex.isolation = std::min(ex.isolation, std::abs(p.c - ex.center));
    if (ex.isolation <= reach)
      fail(ErrorKind::InvalidArgument, "another parabolic parameter lies within " + std::to_string(reach) +
                                           " of gamma(" + theta.to_string() + ")");
  }

  const LabeledRoots at_label = label_roots(ex.label_angle, label_potential, n, cfg);
  LabeledRoots at_base = at_label;
  at_base.c = ex.transport.back();
  at_base.roots = continue_roots(d, n, at_label.roots, ex.transport, nullptr);
  ex.report = loop_permutation(ex.center, radius, phase, at_base, turns, move);
  return ex;
}

}  // namespace dynatomic
