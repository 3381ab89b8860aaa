#include "dynatomic/ray_tracer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

namespace dynatomic {

namespace {

cplxl to_long(cplx z) { return {z.real(), z.imag()}; }
cplx to_double(cplxl z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

struct Evaluation {
  cplxl value;
  cplxl derivative;
  /// min |f^j| over 0 <= j < k (dynamical rays only).
  long double critical_distance = INFINITY;
};

// Points on a ray are parameterized by the depth L = -log G, G the potential.
class Ladder {
 public:
  Ladder(const Angle& angle, bool parameter, cplx c, const Config& cfg)
      : angle_(angle), parameter_(parameter), c_(c.real(), c.imag()), cfg_(cfg), degree_(angle.degree()),
        log_degree_(std::log(static_cast<long double>(angle.degree()))),
        log_log_escape_(std::log(std::log(static_cast<long double>(cfg.rays.escape_radius)))) {}

  double start_depth() const { return static_cast<double>(-log_log_escape_); }

  /// Exact solution at the start depth (k = 0).
  cplx start_point() const {
    return std::polar(cfg_.rays.escape_radius, 2 * std::numbers::pi * angle_.to_double());
  }

  /// Smallest k with d^k G >= log(escape radius).
  int iterations(long double depth) const {
    const long double k = std::ceil((log_log_escape_ + depth) / log_degree_ - 1e-12L);
    return static_cast<int>(std::max(0.0L, k));
  }

  Evaluation evaluate(cplxl x, int k) const {
    Evaluation e;
    cplxl z = x, dz = 1;
    const cplxl c = parameter_ ? x : c_;
    for (int j = 0; j < k; ++j) {
      if (!parameter_) e.critical_distance = std::min(e.critical_distance, std::abs(z));
      if (std::abs(z) > 1e300L) {
        e.value = cplxl(INFINITY, 0);
        return e;
      }
      const cplxl pm1 = ipow(z, degree_ - 1);
      dz = static_cast<long double>(degree_) * pm1 * dz + (parameter_ ? 1.0L : 0.0L);
      z = pm1 * z + c;
    }
    e.value = z;
    e.derivative = dz;
    return e;
  }

  /// exp(d^k G + 2 pi i d^k t).
  cplxl target(long double depth, int k) {
    auto it = phase_.find(k);
    if (it == phase_.end()) {
      const Angle image = tau_iterate(angle_, static_cast<std::uint64_t>(k));
      it = phase_.emplace(k, static_cast<long double>(image.to_double())).first;
    }
    const long double modulus = std::exp(std::exp(k * log_degree_ - depth));
    return std::polar(modulus, 2 * std::numbers::pi_v<long double> * it->second);
  }

  struct Solve {
    bool ok = false;
    cplxl x;
    /// Relative residual of phi(x) = f^k(x)^(1/d^k), i.e. |f^k(x)/w - 1| / d^k.
    double residual = INFINITY;
    long double critical_distance = INFINITY;
  };

  Solve solve(cplxl seed, double depth) {
    const int k = iterations(depth);
    const cplxl w = target(depth, k);
    cplxl x = seed;
    Evaluation e = evaluate(x, k);
    long double res = std::abs(e.value - w) / std::abs(w);
    for (int it = 0; it < cfg_.rays.max_newton && res > 1e-17L; ++it) {
      if (!std::isfinite(static_cast<double>(res)) || std::abs(e.derivative) == 0) break;
      cplxl step = (e.value - w) / e.derivative;
      // Backtrack so the residual never grows.
      bool moved = false;
      for (int back = 0; back < 40 && !moved; ++back, step /= 2.0L) {
        const Evaluation trial = evaluate(x - step, k);
        const long double r = std::abs(trial.value - w) / std::abs(w);
        if (r < res) {
          x -= step;
          e = trial;
          res = r;
          moved = true;
        }
      }
      if (!moved || std::abs(step) <= 1e-19L * (1 + std::abs(x))) break;
    }
    Solve out;
    out.x = x;
    out.residual = static_cast<double>(res / std::pow(static_cast<long double>(degree_), k));
    out.critical_distance = e.critical_distance;
    // The second bound rejects a Newton run that never converged; sliding to
    // a neighbouring ray is caught by the continuity test of the stepper.
    out.ok = std::isfinite(out.residual) && out.residual < cfg_.tol.residual && res < 1e-3L;
    return out;
  }

 private:
  Angle angle_;
  bool parameter_;
  cplxl c_;
  Config cfg_;
  int degree_;
  long double log_degree_;
  long double log_log_escape_;
  std::map<int, long double> phase_;
};

// One continuation step from (depth, x) towards `goal`, halving the step on
// failure. Successive moves per unit depth may not grow by more than a factor
// of 4: a larger jump means Newton left the ray.
struct Stepper {
  Ladder& ladder;
  const Config& cfg;
  double depth;
  cplxl x;
  double rate = INFINITY;
  Ladder::Solve last{};

  bool advance(double step, double goal) {
    for (int h = 0; h <= cfg.rays.max_step_halvings; ++h, step /= 2) {
      const double next = std::min(depth + step, goal);
      last = ladder.solve(x, next);
      const double move = static_cast<double>(std::abs(last.x - x)) / (next - depth);
      if (last.ok && move <= 4 * rate + 1e-12 * (1 + static_cast<double>(std::abs(last.x)))) {
        rate = move;
        depth = next;
        x = last.x;
        return true;
      }
    }
    return false;
  }
};

[[noreturn]] void stalled(const RayPath& path, double depth) {
  fail(ErrorKind::NewtonDivergence,
       "ray " + path.angle.to_string() + " stalled at potential exp(-" + std::to_string(depth) + ")");
}

// Depths -log(G(0) / d^j) at which the dynamical ray of f^j(0)'s preimages
// live; empty when the critical orbit is bounded.
std::vector<double> critical_depths(int degree, cplx c, double escape_radius, double max_depth) {
  cplxl z = 0;
  const cplxl cl(c.real(), c.imag());
  for (int m = 0; m < 4000; ++m) {
    if (std::abs(z) > escape_radius) {
      const long double g0 = std::log(std::abs(z)) / std::pow(static_cast<long double>(degree), m);
      std::vector<double> out;
      for (long double l = -std::log(g0); l < max_depth; l += std::log(static_cast<long double>(degree)))
        out.push_back(static_cast<double>(l));
      return out;
    }
    z = ipow(z, degree) + cl;
  }
  return {};
}

// Samples the ray from the escape radius down to the target potential.
// Returns false on a bifurcation.
bool descend(Ladder& ladder, Stepper& st, RayPath& path, double target_potential) {
  const double goal = -std::log(target_potential);
  if (!(target_potential > 0) || goal <= ladder.start_depth())
    fail(ErrorKind::InvalidArgument, "target potential must lie in (0, log escape radius)");
  const double rung = std::log(2.0) / st.cfg.rays.rungs_per_halving;
  // The ray can only meet an iterated preimage w of 0 (f^j(w) = 0) at the
  // potential G(0) / d^j, so those depths are visited exactly.
  std::vector<double> levels;
  if (!path.parameter) levels = critical_depths(path.angle.degree(), path.c, st.cfg.rays.escape_radius, goal);
  std::size_t level = 0;
  while (level < levels.size() && levels[level] <= st.depth) ++level;
  path.samples.push_back(to_double(st.x));
  path.potentials.push_back(std::exp(-st.depth));
  while (st.depth < goal) {
    const double stop = level < levels.size() ? std::min(goal, levels[level]) : goal;
    if (!st.advance(rung, stop)) stalled(path, st.depth);
    path.samples.push_back(to_double(st.x));
    path.potentials.push_back(std::exp(-st.depth));
    path.max_residual = std::max(path.max_residual, st.last.residual);
    if (level < levels.size() && st.depth == levels[level]) {
      cplxl z = st.x;
      const cplxl c(path.c.real(), path.c.imag());
      for (std::size_t j = 0; j < level; ++j) z = ipow(z, path.angle.degree()) + c;
      if (std::abs(z) < 1e-6L) {
        path.bifurcation = to_double(st.x);
        return false;
      }
      ++level;
    }
  }
  return true;
}

// Continues a periodic ray to the landing depth, keeping every step and
// the checkpoints.
// Returns false when Newton stalls first (precision runs out near a
// repelling landing point, where the tail is not needed).
bool descend_tail(Stepper& st, RayPath& path) {
  const RaySchedule& rs = st.cfg.rays;
  std::vector<double> checkpoints;
  for (int j = rs.landing_samples - 1; j >= 0; --j) {
    const double l = rs.landing_depth * std::pow(1.25, -j);
    if (l > st.depth) checkpoints.push_back(l);
  }
  const double rung = std::log(2.0) / rs.rungs_per_halving;
  for (double goal : checkpoints) {
    while (st.depth < goal) {
      if (!st.advance(std::max(rung, rs.landing_step * st.depth), goal)) return false;
      path.approach.push_back(to_double(st.x));
      path.approach_depths.push_back(st.depth);
    }
    path.tail.push_back(to_double(st.x));
    path.tail_depths.push_back(st.depth);
    path.max_residual = std::max(path.max_residual, st.last.residual);
  }
  return true;
}

// Least-squares fit x(L) = x_inf + a/L + b/L^2 over the tail; returns x_inf.
// The tail of a parabolic landing follows this expansion, while
// interpolating all checkpoints exactly amplifies their noise.
cplx richardson(const std::vector<cplx>& xs, const std::vector<double>& depths) {
  const std::size_t terms = std::min<std::size_t>(3, xs.size());
  double m[3][3] = {};
  cplx rhs[3] = {};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double u = 1 / depths[i];
    const double basis[3] = {1, u, u * u};
    for (std::size_t r = 0; r < terms; ++r) {
      rhs[r] += basis[r] * xs[i];
      for (std::size_t q = 0; q < terms; ++q) m[r][q] += basis[r] * basis[q];
    }
  }
  // Gaussian elimination on the (symmetric positive definite) normal equations.
  for (std::size_t col = 0; col < terms; ++col)
    for (std::size_t r = col + 1; r < terms; ++r) {
      const double f = m[r][col] / m[col][col];
      for (std::size_t q = col; q < terms; ++q) m[r][q] -= f * m[col][q];
      rhs[r] -= f * rhs[col];
    }
  cplx sol[3];
  for (std::size_t r = terms; r-- > 0;) {
    cplx acc = rhs[r];
    for (std::size_t q = r + 1; q < terms; ++q) acc -= m[r][q] * sol[q];
    sol[r] = acc / m[r][r];
  }
  return sol[0];
}

void estimate_landing(RayPath& path) {
  path.raw_landing = path.tail.size() >= 2 ? richardson(path.tail, path.tail_depths)
                                           : (path.tail.empty() ? path.samples.back() : path.tail.back());
  path.landing_estimate = path.raw_landing;
}

// Newton on f^n(z) - z; converges linearly at parabolic points.
std::optional<cplx> periodic_polish(int degree, cplx c, cplx z0, int n) {
  const cplxl cc(c.real(), c.imag());
  cplxl z(z0.real(), z0.imag());
  for (int it = 0; it < 400; ++it) {
    const IterateJet j = iterate_with_derivatives(degree, cc, z, n);
    const cplxl slope = j.dz - 1.0L;
    if (std::abs(slope) == 0) break;
    const cplxl step = (j.value - z) / slope;
    z -= step;
    if (!std::isfinite(static_cast<double>(std::abs(z)))) return std::nullopt;
    if (std::abs(step) <= 1e-17L * (1 + std::abs(z))) break;
  }
  const IterateJet j = iterate_with_derivatives(degree, cc, z, n);
  if (std::abs(j.value - z) > 1e-9L * (1 + std::abs(z))) return std::nullopt;
  return cplx(static_cast<double>(z.real()), static_cast<double>(z.imag()));
}

}  // namespace

RayPath trace_dynamical_ray(cplx c, const Angle& t, double target_potential, const Config& cfg) {
  RayPath path;
  path.angle = t;
  path.c = c;
  Ladder ladder(t, false, c, cfg);
  Stepper st{ladder, cfg, ladder.start_depth(), to_long(ladder.start_point())};
  if (!descend(ladder, st, path, target_potential)) {
    path.raw_landing = path.landing_estimate = path.samples.back();
    return path;
  }
  if (!t.is_periodic()) {
    estimate_landing(path);
    path.converged = true;
    return path;
  }
  const int n = t.period();
  // Landing at a repelling point converges geometrically in the potential:
  // the deepest point polishes to it directly.
  auto repelling_landing = [&](cplx deepest) {
    auto z = periodic_polish(t.degree(), c, deepest, n);
    if (!z || std::abs(orbit_data(t.degree(), c, *z, n).rho) <= 1 + 1e-3 ||
        std::abs(*z - deepest) >= cfg.tol.slow_landing)
      return false;
    path.raw_landing = deepest;
    path.landing_estimate = *z;
    path.converged = true;
    return true;
  };
  if (repelling_landing(path.samples.back())) return path;
  const bool complete = descend_tail(st, path);
  if (repelling_landing(to_double(st.x))) return path;
  if (!complete) stalled(path, st.depth);
  estimate_landing(path);
  path.slow = true;
  if (auto z = periodic_polish(t.degree(), c, path.raw_landing, n);
      z && std::abs(*z - path.raw_landing) < cfg.tol.slow_landing) {
    path.landing_estimate = *z;
    path.converged = true;
  }
  return path;
}

RayPath trace_parameter_ray(const Angle& theta, double target_potential, const Config& cfg) {
  if (theta.is_zero()) fail(ErrorKind::ZeroAngle, "parameter ray of angle 0 lands at the cusp; not traced");
  RayPath path;
  path.angle = theta;
  path.parameter = true;
  Ladder ladder(theta, true, 0.0, cfg);
  Stepper st{ladder, cfg, ladder.start_depth(), to_long(ladder.start_point())};
  descend(ladder, st, path, target_potential);
  if (!theta.is_periodic()) {
    estimate_landing(path);
    path.converged = true;
    return path;
  }
  // Periodic parameter rays land at parabolic parameters of ray period n.
  if (!descend_tail(st, path)) stalled(path, st.depth);
  estimate_landing(path);
  path.slow = true;
  try {
    const ParabolicPoint p = locate_parabolic(theta.degree(), path.raw_landing, theta.period(), cfg);
    if (std::abs(p.c - path.raw_landing) < cfg.tol.slow_landing) {
      path.landing_estimate = p.c;
      path.converged = true;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NonConvergence) throw;
  }
  return path;
}

cplx parameter_ray_point(const Angle& theta, double potential, const Config& cfg) {
  if (theta.is_zero()) fail(ErrorKind::ZeroAngle, "parameter ray of angle 0 is not traced");
  RayPath path;
  path.angle = theta;
  path.parameter = true;
  Ladder ladder(theta, true, 0.0, cfg);
  Stepper st{ladder, cfg, ladder.start_depth(), to_long(ladder.start_point())};
  descend(ladder, st, path, potential);
  return path.samples.back();
}

std::string ray_csv(const RayPath& ray) {
  std::ostringstream out;
  out << "potential,re,im\n";
  char buf[96];
  for (std::size_t i = 0; i < ray.samples.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", ray.potentials[i], ray.samples[i].real(), ray.samples[i].imag());
    out << buf;
  }
  return out.str();
}

std::string rays_svg(const std::vector<RayPath>& rays, double extent) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"%.6f %.6f %.6f %.6f\" width=\"800\" height=\"800\">\n",
                -extent, -extent, 2 * extent, 2 * extent);
  out << buf;
  const double stroke = extent / 400;
  for (const auto& ray : rays) {
    std::snprintf(buf, sizeof buf, "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"%.6f\" data-angle=\"", stroke);
    out << buf << ray.angle.to_string() << "\" points=\"";
    for (cplx z : ray.samples) {
      if (std::abs(z.real()) > 2 * extent || std::abs(z.imag()) > 2 * extent) continue;
      std::snprintf(buf, sizeof buf, "%.6f,%.6f ", z.real(), -z.imag());
      out << buf;
    }
    out << "\"/>\n";
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.6f\" cy=\"%.6f\" r=\"%.6f\" fill=\"red\"/>\n",
                  ray.landing_estimate.real(), -ray.landing_estimate.imag(), 3 * stroke);
    out << buf;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace dynatomic
