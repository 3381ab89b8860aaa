#include "dynatomic/quad_diff.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <functional>
#include <numbers>
#include <queue>

namespace dynatomic {

QuadDiff::QuadDiff(const std::vector<PoleTerm>& terms, const Tolerances& tol) {
  for (const auto& t : terms) add(t, tol);
}

void QuadDiff::add(const PoleTerm& term, const Tolerances& tol) {
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    const double gap = std::abs(it->a - term.a);
    if (gap <= tol.pole_merge) {
      it->c2 += term.c2;
      it->c1 += term.c1;
      if (it->c2 == cplx(0) && it->c1 == cplx(0)) terms_.erase(it);
      return;
    }
    if (gap <= tol.pole_collision && (term.c2 != cplx(0) || term.c1 != cplx(0)))
      fail(ErrorKind::PoleCollision, "poles " + std::to_string(gap) + " apart");
  }
  if (term.c2 == cplx(0) && term.c1 == cplx(0)) return;
  terms_.push_back(term);
}

bool QuadDiff::has_double_pole() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const PoleTerm& t) { return t.c2 != cplx(0); });
}

cplx QuadDiff::operator()(cplx z) const {
  cplx sum = 0;
  for (const auto& t : terms_) {
    const cplx r = 1.0 / (z - t.a);
    sum += r * (t.c1 + r * t.c2);
  }
  return sum;
}

QuadDiff QuadDiff::scaled(cplx factor) const {
  QuadDiff out;
  for (const auto& t : terms_) out.add({t.a, factor * t.c2, factor * t.c1});
  return out;
}

QuadDiff QuadDiff::plus(const QuadDiff& other, const Tolerances& tol) const {
  QuadDiff out = *this;
  for (const auto& t : other.terms_) out.add(t, tol);
  return out;
}

QuadDiff QuadDiff::minus(const QuadDiff& other, const Tolerances& tol) const {
  return plus(other.scaled(-1.0), tol);
}

double QuadDiff::max_coefficient() const {
  double m = 0;
  for (const auto& t : terms_) m = std::max({m, std::abs(t.c2), std::abs(t.c1)});
  return m;
}

QuadDiff random_quad_diff(std::mt19937_64& rng, int poles, bool double_poles) {
  std::uniform_real_distribution<double> u(-1.5, 1.5), v(-1, 1);
  QuadDiff q;
  while (static_cast<int>(q.terms().size()) < poles) {
    const double ar = u(rng), ai = u(rng);
    const cplx a(ar, ai);
    if (std::abs(a) < 0.1 || std::abs(a) > 1.5) continue;
    bool close = false;
    for (const auto& t : q.terms()) close = close || std::abs(t.a - a) < 0.05;
    if (close) continue;
    cplx c2 = 0;
    if (double_poles) c2 = {v(rng), v(rng)};
    const cplx c1{v(rng), v(rng)};
    q.add({a, c2, c1});
  }
  return q;
}

QuadDiff pushforward(int degree, cplx c, const QuadDiff& q, const Tolerances& tol) {
  const double d = degree;
  QuadDiff out;
  for (const auto& t : q.terms()) {
    if (std::abs(t.a) <= tol.pole_merge) {
      if (t.c2 != cplx(0)) fail(ErrorKind::DoublePoleAtZero, "double pole at the critical point");
      continue;
    }
    const cplx fa = ipow(t.a, degree) + c;
    const cplx fpa = d * ipow(t.a, degree - 1);
    const cplx simple = t.c1 / fpa - t.c2 * (d - 1) / (t.a * fpa);
    out.add({fa, t.c2, simple}, tol);
    out.add({c, 0.0, -simple}, tol);
  }
  return out;
}

cplx pushforward_bruteforce(int degree, cplx c, const QuadDiff& q, cplx z) {
  const cplx u = z - c;
  if (std::abs(u) < 1e-8 * (1 + std::abs(c))) fail(ErrorKind::NearCriticalValue, "z is at the critical value");
  const long double d = degree;
  const cplxl ul(u.real(), u.imag());
  const cplxl root = std::polar(std::pow(std::abs(ul), 1.0L / d), std::arg(ul) / d);
  cplx sum = 0;
  for (int k = 0; k < degree; ++k) {
    cplxl w = root * std::polar(1.0L, 2 * std::numbers::pi_v<long double> * k / d);
    for (int it = 0; it < 2; ++it) w -= (ipow(w, degree) - ul) / (d * ipow(w, degree - 1));
    const cplx wd(static_cast<double>(w.real()), static_cast<double>(w.imag()));
    for (const auto& t : q.terms())
      if (std::abs(wd - t.a) <= 1e-12 * (1 + std::abs(t.a)))
        fail(ErrorKind::InvalidArgument, "a preimage of z is a pole");
    const cplxl fp = d * ipow(w, degree - 1);
    const cplx fp2(static_cast<double>((fp * fp).real()), static_cast<double>((fp * fp).imag()));
    sum += q(wd) / fp2;
  }
  return sum;
}

namespace {

// Integral of g over [u0, u1] x [v0, v1], refined where the difference
// between a cell's 8x8 Gauss rule and the sum over its four quarters is
// largest. The answer is the sum of the quarter estimates.
class Cubature {
 public:
  using Integrand = std::function<double(double, double)>;

  Cubature(Integrand g, double rel_tol) : g_(std::move(g)), rel_tol_(rel_tol) {}

  NormEstimate run(double u0, double u1, double v0, double v1, int nu, int nv) {
    std::priority_queue<Cell> queue;
    double value = 0, error = 0;
    auto push = [&](const Cell& cell) {
      value += cell.fine;
      error += cell.error;
      queue.push(cell);
    };
    for (int i = 0; i < nu; ++i)
      for (int j = 0; j < nv; ++j)
        push(make(u0 + (u1 - u0) * i / nu, u0 + (u1 - u0) * (i + 1) / nu, v0 + (v1 - v0) * j / nv,
                  v0 + (v1 - v0) * (j + 1) / nv));
    constexpr std::size_t max_cells = 40000;
    while (queue.size() < max_cells && error > rel_tol_ * std::abs(value) && error > 1e-300) {
      const Cell worst = queue.top();
      queue.pop();
      value -= worst.fine;
      error -= worst.error;
      const double um = 0.5 * (worst.u0 + worst.u1), vm = 0.5 * (worst.v0 + worst.v1);
      push(make(worst.u0, um, worst.v0, vm));
      push(make(um, worst.u1, worst.v0, vm));
      push(make(worst.u0, um, vm, worst.v1));
      push(make(um, worst.u1, vm, worst.v1));
    }
    NormEstimate out;
    sum(queue, out.value, out.error);
    return out;
  }

 private:
  struct Cell {
    double u0, u1, v0, v1;
    double fine, error;
    bool operator<(const Cell& o) const { return error < o.error; }
  };

  static void sum(std::priority_queue<Cell> queue, double& value, double& error) {
    // Exact resummation; the running totals in run() drift.
    value = error = 0;
    while (!queue.empty()) {
      value += queue.top().fine;
      error += queue.top().error;
      queue.pop();
    }
  }

  double gauss(double u0, double u1, double v0, double v1) const {
    using Rule = boost::math::quadrature::gauss<double, 8>;
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    const double hu = 0.5 * (u1 - u0), mu = 0.5 * (u0 + u1);
    const double hv = 0.5 * (v1 - v0), mv = 0.5 * (v0 + v1);
    double total = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (int si : {-1, 1})
        for (std::size_t j = 0; j < x.size(); ++j)
          for (int sj : {-1, 1}) total += w[i] * w[j] * g_(mu + si * hu * x[i], mv + sj * hv * x[j]);
    return total * hu * hv;
  }

  Cell make(double u0, double u1, double v0, double v1) const {
    const double um = 0.5 * (u0 + u1), vm = 0.5 * (v0 + v1);
    const double coarse = gauss(u0, u1, v0, v1);
    const double fine =
        gauss(u0, um, v0, vm) + gauss(um, u1, v0, vm) + gauss(u0, um, vm, v1) + gauss(um, u1, vm, v1);
    return {u0, u1, v0, v1, fine, std::abs(fine - coarse)};
  }

  Integrand g_;
  double rel_tol_;
};

constexpr double two_pi = 2 * std::numbers::pi;

}  // namespace

NormEstimate qd_norm(const QuadDiff& q, const Region& region, double rel_tol) {
  if (!(region.outer > region.inner) || region.inner < 0)
    fail(ErrorKind::InvalidArgument, "region needs 0 <= inner < outer");
  for (const auto& t : q.terms()) {
    const double r = std::abs(t.a - region.center);
    if (t.c2 != cplx(0) && r >= region.inner && r <= region.outer)
      fail(ErrorKind::DoublePoleInRegion, "double pole inside the region");
  }
  if (q.empty()) return {};
  Cubature cub(
      [&](double r, double theta) { return r * std::abs(q(region.center + std::polar(r, theta))); }, rel_tol);
  return cub.run(region.inner, region.outer, 0, two_pi, 8, 32);
}

ContractionReport contraction_check(int degree, cplx c, const QuadDiff& q, double radius) {
  if (q.empty()) fail(ErrorKind::InvalidArgument, "the zero differential has no strict contraction");
  if (q.has_double_pole()) fail(ErrorKind::InvalidArgument, "double poles are not integrable");
  ContractionReport rep;
  rep.radius = radius;
  rep.preimage_radius = std::pow(radius + std::abs(c), 1.0 / degree);
  if (!(rep.preimage_radius < radius))
    fail(ErrorKind::RegionNotCompactlyContained, "f^{-1}(V) is not inside V");

  rep.full = qd_norm(q, {0.0, 0, radius});
  rep.pushed = qd_norm(pushforward(degree, c, q), {0.0, 0, radius});
  // U is star-shaped about 0: along the direction e^{i phi}, f(w) - c = w^d
  // runs along a ray from 0 that leaves the convex disk |u + c| < R once,
  // at |u| = t_max(phi).
  auto extent = [&](double phi) {
    const cplx e = std::polar(1.0, degree * phi);
    const double b = (std::conj(e) * c).real();
    const double t = -b + std::sqrt(b * b + radius * radius - std::norm(c));
    return std::pow(t, 1.0 / degree);
  };
  Cubature cub(
      [&](double s, double phi) {
        const double rmax = extent(phi);
        return rmax * rmax * s * std::abs(q(std::polar(s * rmax, phi)));
      },
      1e-6);
  rep.preimage = cub.run(0, 1, 0, two_pi, 8, 32);

  const double err1 = rep.pushed.error + rep.preimage.error;
  const double err2 = rep.preimage.error + rep.full.error;
  rep.holds = rep.pushed.value <= rep.preimage.value + err1 && rep.full.value - rep.preimage.value > err2;
  return rep;
}

Case2Report case2_certificate(int degree, cplx c0, cplx z0, int ell, const Config& cfg) {
  if (ell < 1) fail(ErrorKind::InvalidArgument, "ell must be >= 1");
  const OrbitData o = orbit_data(degree, c0, z0, ell);
  const auto l = static_cast<std::size_t>(ell);
  if (std::abs(o.z[l] - z0) > cfg.tol.pole_merge * (1 + std::abs(z0)))
    fail(ErrorKind::NotParabolic, "z0 is not ell-periodic");
  if (std::abs(o.rho - 1.0) > cfg.tol.multiplier) fail(ErrorKind::NotParabolic, "(f^ell)'(z0) is not 1");

  Case2Report rep;
  rep.ell = ell;
  rep.orbit.assign(o.z.begin(), o.z.begin() + ell);
  rep.rho.assign(l, 0.0);
  cplx prod = 1;
  for (std::size_t k = l; k-- > 0;) {
    prod *= o.delta[k];
    rep.rho[k] = prod;
  }
  for (std::size_t k = 0; k < l; ++k) rep.q.add({o.z[k], 0.0, rep.rho[k]}, cfg.tol);
  rep.pushed = pushforward(degree, c0, rep.q, cfg.tol);
  rep.dP_dc = dPn_dc(degree, c0, z0, ell);
  QuadDiff r = rep.pushed.minus(rep.q, cfg.tol);
  r.add({c0, 0.0, rep.dP_dc}, cfg.tol);
  rep.residual = r.max_coefficient();
  return rep;
}

MuTuple solve_mu(int degree, const std::vector<cplx>& orbit, const Tolerances& tol) {
  const std::size_t m = orbit.size();
  if (m == 0) fail(ErrorKind::InvalidArgument, "empty cycle");
  const double d = degree;
  cplx rho = 1;
  for (cplx z : orbit) {
    if (z == cplx(0)) fail(ErrorKind::InvalidArgument, "the cycle passes through the critical point");
    rho *= d * ipow(z, degree - 1);
  }
  if (std::abs(rho - 1.0) <= tol.multiplier) fail(ErrorKind::MultiplierOne, "multiplier is 1");

  auto step = [&](cplx mu, cplx z) { return mu / (d * ipow(z, degree - 1)) - (d - 1) / (d * ipow(z, degree)); };
  // mu_m = mu_0 / rho + A, so the cyclic solution has mu_0 (1 - 1/rho) = A.
  cplx a = 0;
  for (cplx z : orbit) a = step(a, z);
  MuTuple out;
  out.conditioning = 1 / std::abs(1.0 - 1.0 / rho);
  out.mu.resize(m);
  out.mu[0] = a / (1.0 - 1.0 / rho);
  for (std::size_t k = 0; k + 1 < m; ++k) out.mu[k + 1] = step(out.mu[k], orbit[k]);
  const cplx back = step(out.mu[m - 1], orbit[m - 1]);
  out.closure = std::abs(back - out.mu[0]) / std::max(1.0, std::abs(out.mu[0]));
  return out;
}

namespace {

cplxl multiplier_at(int degree, cplxl c, cplx z0, int m) {
  cplxl z(z0.real(), z0.imag());
  for (int it = 0; it < 60; ++it) {
    const IterateJet j = iterate_with_derivatives(degree, c, z, m);
    const cplxl step = (j.value - z) / (j.dz - 1.0L);
    z -= step;
    if (std::abs(step) <= 1e-18L * (1 + std::abs(z))) break;
  }
  return iterate_with_derivatives(degree, c, z, m).dz;
}

}  // namespace

cplx continued_multiplier(int degree, cplx c, cplx z0, int m) {
  const cplxl rho = multiplier_at(degree, cplxl(c.real(), c.imag()), z0, m);
  return {static_cast<double>(rho.real()), static_cast<double>(rho.imag())};
}

DoublePoleReport double_pole_certificate(int degree, cplx c0, cplx z0, int m, const Config& cfg) {
  if (m < 1) fail(ErrorKind::InvalidArgument, "m must be >= 1");
  const OrbitData o = orbit_data(degree, c0, z0, m);
  const auto len = static_cast<std::size_t>(m);
  if (std::abs(o.z[len] - z0) > cfg.tol.pole_merge * (1 + std::abs(z0)))
    fail(ErrorKind::NotParabolic, "z0 is not m-periodic");

  DoublePoleReport rep;
  rep.m = m;
  rep.orbit.assign(o.z.begin(), o.z.begin() + m);
  rep.rho = o.rho;
  rep.mu = solve_mu(degree, rep.orbit, cfg.tol);

  // Long double throughout: in double the rounding of c0 +- h alone costs
  // 1e-16 / h.
  const cplxl cl(c0.real(), c0.imag());
  auto central = [&](long double step) {
    return (multiplier_at(degree, cl + step, z0, m) - multiplier_at(degree, cl - step, z0, m)) / (2 * step);
  };
  constexpr long double h = 1e-6L;
  const cplxl rho_dot = (4.0L * central(h / 2) - central(h)) / 3.0L;
  rep.rho_dot = {static_cast<double>(rho_dot.real()), static_cast<double>(rho_dot.imag())};

  for (std::size_t k = 0; k < len; ++k) rep.q.add({rep.orbit[k], 1.0, rep.mu.mu[k]}, cfg.tol);
  rep.pushed = pushforward(degree, c0, rep.q, cfg.tol);
  rep.mu_sum = 0;
  for (std::size_t k = 0; k < len; ++k) rep.mu_sum += rep.mu.mu[(k + 1) % len];
  QuadDiff r = rep.pushed.minus(rep.q, cfg.tol);
  r.add({c0, 0.0, rep.rho_dot / rep.rho}, cfg.tol);
  rep.residual = r.max_coefficient();
  return rep;
}

}  // namespace dynatomic
