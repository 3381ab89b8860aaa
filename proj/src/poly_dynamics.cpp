#include "dynatomic/poly_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <tuple>

namespace dynatomic {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

std::size_t root_count(int degree, int n) {
  if (degree < 2) fail(ErrorKind::InvalidArgument, "degree must be >= 2");
  if (n < 1) fail(ErrorKind::InvalidArgument, "period must be >= 1");
  std::size_t count = 1;
  for (int i = 0; i < n; ++i) {
    count *= static_cast<std::size_t>(degree);
    if (count > (1u << 16)) fail(ErrorKind::BudgetExceeded, "d^n exceeds 65536 periodic points");
  }
  return count;
}

bool lex_less(const cplx& a, const cplx& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

long double rounding_scale(const IterateJet& j, const cplxl& z) {
  return std::max<long double>(1.0L, std::abs(z) * std::abs(j.dz));
}

}  // namespace

OrbitData orbit_data(int degree, cplx c, cplx z0, int length) {
  if (length < 1) fail(ErrorKind::InvalidArgument, "orbit length must be >= 1");
  OrbitData o;
  o.degree = degree;
  o.c = c;
  o.z.push_back(z0);
  o.rho = 1.0;
  for (int k = 0; k < length; ++k) {
    const cplx zk = o.z.back();
    const cplx delta = static_cast<double>(degree) * ipow(zk, degree - 1);
    o.delta.push_back(delta);
    o.rho *= delta;
    o.z.push_back(ipow(zk, degree) + c);
  }
  return o;
}

IterateJet iterate_with_derivatives(int degree, cplxl c, cplxl z, int n) {
  IterateJet j{z, 1.0L, 0.0L};
  const long double dd = degree;
  for (int k = 0; k < n; ++k) {
    const cplxl zp = ipow(j.value, degree - 1);
    j.dz *= dd * zp;
    j.dc = dd * zp * j.dc + 1.0L;
    j.value = zp * j.value + c;
  }
  return j;
}

cplx dPn_dc(int degree, cplx c, cplx z, int n) {
  const OrbitData o = orbit_data(degree, c, z, n);
  // Horner form of 1 + delta_{n-1} + delta_{n-1} delta_{n-2} + ...
  cplx sum = 0.0;
  for (int k = 1; k < n; ++k) sum = (sum + 1.0) * o.delta[static_cast<std::size_t>(k)];
  return sum + 1.0;
}

std::vector<PeriodicRoot> periodic_roots(int degree, cplx c, int n, const Config& cfg) {
  const std::size_t count = root_count(degree, n);
  const cplxl cl(c.real(), c.imag());
  const long double radius = std::max<long double>(2.0L, 1.0L + std::abs(cl));
  std::vector<cplxl> z(count);
  for (std::size_t k = 0; k < count; ++k) {
    const long double phi = 2 * kPi * static_cast<long double>(k) / static_cast<long double>(count) + 0.37L;
    z[k] = std::polar(radius, phi);
  }

  // Aberth-Ehrlich iteration, Gauss-Seidel ordering.
  long double best = INFINITY;
  int stall = 0;
  for (int sweep = 0; sweep < cfg.budgets.max_root_sweeps; ++sweep) {
    long double largest = 0;
    for (std::size_t k = 0; k < count; ++k) {
      const IterateJet j = iterate_with_derivatives(degree, cl, z[k], n);
      const cplxl p = j.value - z[k];
      if (p == cplxl(0)) continue;
      const cplxl dp = j.dz - 1.0L;
      cplxl sum = 0;
      for (std::size_t m = 0; m < count; ++m)
        if (m != k) sum += 1.0L / (z[k] - z[m]);
      cplxl step;
      if (dp == cplxl(0)) {
        step = 1e-6L * (1.0L + std::abs(z[k]));
      } else {
        const cplxl ratio = p / dp;
        step = ratio / (1.0L - ratio * sum);
      }
      z[k] -= step;
      largest = std::max(largest, std::abs(step) / (1.0L + std::abs(z[k])));
    }
    if (largest < 1e-17L) break;
    // Multiple roots converge linearly and then hover at the rounding floor.
    if (largest < best * 0.5L) {
      best = largest;
      stall = 0;
    } else if (++stall > 40 && best < 1e-6L) {
      break;
    }
  }

  std::vector<PeriodicRoot> out;
  out.reserve(count);
  for (const cplxl& zk : z) {
    const IterateJet j = iterate_with_derivatives(degree, cl, zk, n);
    const long double res = std::abs(j.value - zk) / rounding_scale(j, zk);
    if (!std::isfinite(static_cast<double>(res)) || res > cfg.tol.residual)
      fail(ErrorKind::NonConvergence, "periodic point solver did not converge: residual " + std::to_string(static_cast<double>(res)) +
                                          " at c = " + std::to_string(c.real()) + "+" + std::to_string(c.imag()) + "i, n = " +
                                          std::to_string(n));
    out.push_back(PeriodicRoot{cplx(static_cast<double>(zk.real()), static_cast<double>(zk.imag())), static_cast<double>(res)});
  }
  std::sort(out.begin(), out.end(), [](const PeriodicRoot& a, const PeriodicRoot& b) { return lex_less(a.z, b.z); });
  return out;
}

std::vector<cplx> periodic_points(int degree, cplx c, int n, const Config& cfg) {
  std::vector<cplx> out;
  for (const auto& r : periodic_roots(degree, c, n, cfg)) out.push_back(r.z);
  return out;
}

int exact_period(int degree, cplx c, cplx z, int n, double tol) {
  cplx w = z;
  for (int m = 1; m <= n; ++m) {
    w = ipow(w, degree) + c;
    if (n % m == 0 && std::abs(w - z) <= tol * (1.0 + std::abs(z))) return m;
  }
  return n;
}

std::vector<cplx> exact_period_points(int degree, cplx c, int n, const Config& cfg) {
  std::vector<cplx> out;
  for (const cplx& z : periodic_points(degree, c, n, cfg))
    if (exact_period(degree, c, z, n) == n) out.push_back(z);
  return out;
}

Jet3 Jet3::compose(const Jet3& inner) const {
  Jet3 result{a0, 0.0, 0.0};
  result = result + Jet3{a1, 0.0, 0.0} * inner;
  result = result + Jet3{a2, 0.0, 0.0} * inner * inner;
  return result;
}

JetReport jet_normal_form(int degree, cplx c0, cplx z0, int m, int s, const Config& cfg) {
  if (m < 1 || s < 1) fail(ErrorKind::InvalidArgument, "m and s must be >= 1");
  Jet3 x{z0, 1.0, 0.0};
  for (int k = 0; k < m; ++k) {
    Jet3 power{1.0, 0.0, 0.0};
    for (int e = 0; e < degree; ++e) power = power * x;
    x = power + Jet3{c0, 0.0, 0.0};
  }
  JetReport report;
  report.first_return = Jet3{x.a0 - z0, x.a1, x.a2};
  report.rho = report.first_return.a1;
  const double tol = cfg.tol.multiplier;
  if (std::abs(report.first_return.a0) > tol * (1.0 + std::abs(z0)))
    fail(ErrorKind::MultiplierMismatch, "z0 is not " + std::to_string(m) + "-periodic");
  cplx rho_s = 1.0;
  cplx geometric = 0.0;
  for (int k = 0; k < s; ++k) {
    geometric += rho_s;
    rho_s *= report.rho;
  }
  if (std::abs(rho_s - 1.0) > tol) fail(ErrorKind::MultiplierMismatch, "rho^s differs from 1");
  if (std::abs(report.rho - 1.0) < tol) fail(ErrorKind::MultiplierMismatch, "rho equals 1");

  report.iterate = report.first_return;
  for (int k = 1; k < s; ++k) report.iterate = report.first_return.compose(report.iterate);
  const cplx rho_s_minus_1 = rho_s / report.rho;
  report.predicted = Jet3{0.0, rho_s, report.first_return.a2 * rho_s_minus_1 * geometric};
  return report;
}

std::pair<cplx, cplx> refine_parabolic(int degree, cplx c, cplx z, int p, cplx omega, int max_iter) {
  cplxl cc(c.real(), c.imag());
  cplxl zz(z.real(), z.imag());
  const cplxl om(omega.real(), omega.imag());
  const long double dd = degree;
  for (int it = 0; it < max_iter; ++it) {
    cplxl v = zz, vz = 1, vzz = 0, vc = 0, vzc = 0;
    for (int k = 0; k < p; ++k) {
      const cplxl pm2 = degree >= 2 ? ipow(v, degree - 2) : cplxl(0);
      const cplxl pm1 = pm2 * v;
      const cplxl f1 = dd * pm1;
      const cplxl f2 = dd * (dd - 1) * pm2;
      const cplxl nvzz = f2 * vz * vz + f1 * vzz;
      const cplxl nvzc = f2 * vc * vz + f1 * vzc;
      const cplxl nvc = f1 * vc + 1.0L;
      const cplxl nvz = f1 * vz;
      v = pm1 * v + cc;
      vz = nvz;
      vzz = nvzz;
      vc = nvc;
      vzc = nvzc;
    }
    const cplxl g1 = v - zz;
    const cplxl g2 = vz - om;
    // [vz - 1, vc; vzz, vzc] (dz, dc) = (g1, g2)
    const cplxl a = vz - 1.0L, b = vc, cm = vzz, dm = vzc;
    const cplxl det = a * dm - b * cm;
    if (std::abs(det) == 0) fail(ErrorKind::NonConvergence, "singular Jacobian in parabolic refinement");
    const cplxl dz = (g1 * dm - b * g2) / det;
    const cplxl dc = (a * g2 - cm * g1) / det;
    zz -= dz;
    cc -= dc;
    if (!std::isfinite(static_cast<double>(std::abs(zz))) || !std::isfinite(static_cast<double>(std::abs(cc))))
      fail(ErrorKind::NonConvergence, "parabolic refinement diverged");
    if (std::abs(dz) < 1e-17L * (1 + std::abs(zz)) && std::abs(dc) < 1e-17L * (1 + std::abs(cc))) break;
    if (it + 1 == max_iter && (std::abs(dz) > 1e-12L * (1 + std::abs(zz)) || std::abs(dc) > 1e-12L * (1 + std::abs(cc))))
      fail(ErrorKind::NonConvergence, "parabolic refinement did not converge");
  }
  return {cplx(static_cast<double>(cc.real()), static_cast<double>(cc.imag())),
          cplx(static_cast<double>(zz.real()), static_cast<double>(zz.imag()))};
}

namespace {

// Groups points within tol of each other (transitively); returns the
// cluster index of every point.
std::vector<std::size_t> cluster_points(const std::vector<cplx>& pts, double tol) {
  std::vector<std::size_t> parent(pts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (std::abs(pts[i] - pts[j]) < tol) parent[find(i)] = find(j);
  std::vector<std::size_t> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) out[i] = find(i);
  return out;
}

}  // namespace

SplitReport orbit_splitting(int degree, cplx c0, int n, double r, const Config& cfg) {
  if (!(r > 0)) fail(ErrorKind::InvalidArgument, "perturbation radius must be positive");
  const std::vector<cplx> base = periodic_points(degree, c0, n, cfg);
  const std::vector<std::size_t> label = cluster_points(base, 0.05 * std::sqrt(r));
  std::vector<cplx> centers;
  std::size_t multiple = 0;
  {
    std::vector<std::size_t> sizes(base.size(), 0);
    for (std::size_t l : label) ++sizes[l];
    for (std::size_t i = 0; i < base.size(); ++i)
      if (sizes[i] >= 2) {
        cplx sum = 0;
        for (std::size_t j = 0; j < base.size(); ++j)
          if (label[j] == i) sum += base[j];
        centers.push_back(sum / static_cast<double>(sizes[i]));
        multiple += sizes[i];
      }
  }
  if (centers.empty()) fail(ErrorKind::NotParabolic, "no multiple periodic point at the center");

  SplitReport report;
  report.center = c0;
  report.radius = r;
  report.n = n;
  report.parabolic_period = static_cast<int>(centers.size());
  const double match = std::max(cfg.tol.cluster * r * r, 1e-10);

  const double phases[] = {0.3, 0.3 + 0.5 * std::numbers::pi, 0.3 + std::numbers::pi, 0.3 + 1.5 * std::numbers::pi};
  for (double phi : phases) {
    const cplx c = c0 + std::polar(r, phi);
    const std::vector<cplx> roots = periodic_points(degree, c, n, cfg);
    std::vector<std::pair<double, std::size_t>> dist;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      double best = INFINITY;
      for (const cplx& p : centers) best = std::min(best, std::abs(roots[i] - p));
      dist.emplace_back(best, i);
    }
    std::sort(dist.begin(), dist.end());
    if (multiple < dist.size() && !(3.0 * dist[multiple - 1].first < dist[multiple].first))
      fail(ErrorKind::ClusterAmbiguous, "split roots are not separated from the other roots at radius " + std::to_string(r));

    std::vector<bool> near(roots.size(), false);
    for (std::size_t k = 0; k < multiple; ++k) near[dist[k].second] = true;
    std::vector<bool> done(roots.size(), false);
    std::vector<int> lengths;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (!near[i] || done[i]) continue;
      int length = 0;
      std::size_t cur = i;
      do {
        done[cur] = true;
        ++length;
        const cplx image = ipow(roots[cur], degree) + c;
        std::size_t best = 0;
        double bd = INFINITY;
        for (std::size_t j = 0; j < roots.size(); ++j) {
          const double dj = std::abs(roots[j] - image);
          if (dj < bd) {
            bd = dj;
            best = j;
          }
        }
        if (bd > match) fail(ErrorKind::ClusterAmbiguous, "image of a split root matches no root");
        if (!near[best]) fail(ErrorKind::ClusterAmbiguous, "a split cycle leaves the parabolic neighbourhood");
        cur = best;
      } while (cur != i && length <= n);
      if (cur != i) fail(ErrorKind::ClusterAmbiguous, "split roots do not close up into a cycle");
      lengths.push_back(length);
    }
    std::sort(lengths.begin(), lengths.end());
    if (report.lengths.empty()) {
      report.lengths = lengths;
    } else if (report.lengths != lengths) {
      fail(ErrorKind::ClusterAmbiguous, "cycle lengths depend on the direction of perturbation");
    }
  }
  return report;
}

ParabolicPoint locate_parabolic(int degree, cplx c, int n, const Config& cfg) {
  const std::vector<cplx> pts = periodic_points(degree, c, n, cfg);
  // The colliding points have (f^n)' closest to 1.
  std::size_t best = 0;
  double closest = INFINITY;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double slope = std::abs(orbit_data(degree, c, pts[i], n).rho - 1.0);
    if (slope < closest) {
      closest = slope;
      best = i;
    }
  }
  double gap = INFINITY;
  for (std::size_t j = 0; j < pts.size(); ++j)
    if (j != best) gap = std::min(gap, std::abs(pts[best] - pts[j]));
  // The centroid of the whole colliding group is far more accurate than
  // any single member.
  const std::vector<std::size_t> label = cluster_points(pts, 4 * gap);
  cplx z = 0;
  double spread = 0;
  int members = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (label[i] == label[best]) {
      z += pts[i];
      ++members;
    }
  z /= static_cast<double>(members);
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (label[i] == label[best]) spread = std::max(spread, std::abs(pts[i] - z));

  ParabolicPoint out;
  out.period = exact_period(degree, c, z, n, 1e-4 + 2 * spread);
  const OrbitData orbit = orbit_data(degree, c, z, out.period);
  const int order = n / out.period;
  const double turns = std::round(std::arg(orbit.rho) / (2 * std::numbers::pi) * order);
  out.multiplier = std::polar(1.0, 2 * std::numbers::pi * turns / order);
  std::tie(out.c, out.z) = refine_parabolic(degree, c, z, out.period, out.multiplier);
  return out;
}

}  // namespace dynatomic
