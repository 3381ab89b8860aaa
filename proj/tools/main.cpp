#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "dynatomic/acceptance.hpp"
#include "dynatomic/exact_poly.hpp"
#include "dynatomic/monodromy_engine.hpp"
#include "dynatomic/numeric_monodromy.hpp"
#include "dynatomic/parabolic.hpp"
#include "dynatomic/poly_dynamics.hpp"
#include "dynatomic/quad_diff.hpp"
#include "dynatomic/ray_tracer.hpp"
#include "dynatomic/symbolic.hpp"
#include "json_io.hpp"
#include "render.hpp"

using namespace dynatomic;
using namespace dynatomic::cli;

namespace {

constexpr int exit_check_failed = 1;
constexpr int exit_usage = 2;

struct Globals {
  std::string config_path;
  std::string output_dir;
  int threads = -1;
  long long seed = -1;
  bool pretty = false;
  Config cfg;
};

Globals g;

// Appends the fields of `extra` to the object `out`.
void merge(Json& out, const Json& extra) {
  for (const auto& [k, v] : extra.items()) out[k] = v;
}

void emit(const Json& j) { std::cout << dump(j, g.pretty ? 2 : -1) << '\n'; }

std::filesystem::path output_file(const std::string& name) {
  const std::filesystem::path dir(g.cfg.output_dir);
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + path.string());
  out << text;
}

std::string file_safe(const Angle& a) {
  std::string s = a.to_string();
  std::replace(s.begin(), s.end(), '/', '_');
  return s;
}

// Inputs the caller got wrong, as opposed to numerical trouble.
bool is_usage_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::DegreeMismatch:
    case ErrorKind::NotPeriodic:
    case ErrorKind::ZeroAngle:
    case ErrorKind::NotMaximal:
    case ErrorKind::PeriodOne:
    case ErrorKind::SpecialAngle:
    case ErrorKind::NotCandidate:
    case ErrorKind::NotPrimitive:
    case ErrorKind::NotExactPeriod:
    case ErrorKind::BudgetExceeded:
    case ErrorKind::RegionNotCompactlyContained:
      return true;
    default:
      return false;
  }
}

void require_degree(int d) {
  if (d < 2) fail(ErrorKind::InvalidArgument, "--d must be at least 2");
}

// ---------------------------------------------------------------- commands

struct AngleArgs {
  int d = 2;
  std::string angle;
};

int cmd_kneading(const AngleArgs& a) {
  require_degree(a.d);
  const Angle theta = Angle::parse(a.angle, a.d);
  emit({{"d", a.d}, {"angle", to_json(theta)}, {"kneading", kneading_sequence(theta).to_string()}});
  return 0;
}

int cmd_classify(const AngleArgs& a) {
  require_degree(a.d);
  const Angle theta = Angle::parse(a.angle, a.d);
  const ParabolicClass pc = classify_angle(theta);
  std::optional<BetaFamily> betas;
  if (pc.verdict == Verdict::SatelliteCandidate) betas = beta_family(theta);
  Json out{{"d", a.d}};
  merge(out, to_json(pc, betas));
  emit(out);
  return 0;
}

struct ConnectArgs {
  int d = 2, n = 2;
  std::string itinerary;
};

int cmd_connect(const ConnectArgs& a) {
  require_degree(a.d);
  const Word w = Word::parse(a.itinerary, a.d);
  if (static_cast<int>(w.size()) != a.n)
    fail(ErrorKind::InvalidArgument, "itinerary length " + std::to_string(w.size()) + " differs from --n");
  const ConnectionPlan plan = connect(a.d, a.n, w);
  Json out{{"d", a.d}, {"n", a.n}};
  merge(out, to_json(plan));
  const bool ok = plan.apply(w) == plan.target && plan.target.max_rotation() == special_word(a.d, a.n);
  out["reaches_special_orbit"] = ok;
  emit(out);
  return ok ? 0 : exit_check_failed;
}

struct PeriodArgs {
  int d = 2, n = 2;
};

int cmd_transitivity(const PeriodArgs& a) {
  require_degree(a.d);
  const TransitivityReport r = transitivity_certificate(a.d, a.n, g.cfg.budgets.words);
  emit({{"d", r.degree},
        {"n", r.n},
        {"connected", r.connected},
        {"vertices", r.vertices},
        {"components", r.components},
        {"moves", r.moves}});
  return r.connected ? 0 : exit_check_failed;
}

int cmd_parabolics(const PeriodArgs& a) {
  require_degree(a.d);
  ParabolicSet set = parabolic_parameters(a.d, a.n, g.cfg);
  std::sort(set.parameters.begin(), set.parameters.end(), [](const auto& x, const auto& y) {
    return x.c.real() != y.c.real() ? x.c.real() < y.c.real() : x.c.imag() < y.c.imag();
  });
  Json coeffs = Json::array();
  for (const BigInt& b : set.resultant) coeffs.push_back(b.str());
  const auto csv = output_file("parabolics_d" + std::to_string(a.d) + "_n" + std::to_string(a.n) + ".csv");
  std::string text = "re,im,residual\n";
  char buf[96];
  double worst = 0;
  for (const auto& p : set.parameters) {
    const double residual = std::max(p.residual_value, p.residual_derivative);
    worst = std::max(worst, residual);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p.c.real(), p.c.imag(), residual);
    text += buf;
  }
  write_file(csv, text);
  emit({{"d", a.d},
        {"n", a.n},
        {"resultant", coeffs},
        {"count", set.parameters.size()},
        {"max_residual", worst},
        {"csv", csv.string()}});
  for (const auto& p : set.parameters)
    emit({{"c", to_json(p.c)},
          {"z", to_json(p.z)},
          {"period", p.period},
          {"multiplier", to_json(p.multiplier)},
          {"multiplicity", p.multiplicity},
          {"residual_value", p.residual_value},
          {"residual_derivative", p.residual_derivative}});
  return worst < 1e-8 ? 0 : exit_check_failed;
}

struct QdArgs {
  int d = 2;
  std::string kind;
  std::string c = "0";
  std::string z;
  std::string angle;
  int period = 0;
  std::string qd;
  int poles = 3;
  int samples = 100;
  double radius = 0;
  std::string center = "0";
  double tol = 0;
  double min_derivative = 0.05;
};

// Parabolic (c, z, period) from --c/--z/--m or from the landing point of --angle.
std::tuple<cplx, cplx, int> parabolic_input(const QdArgs& a) {
  if (!a.angle.empty()) {
    const Angle theta = Angle::parse(a.angle, a.d);
    const RayPath ray = trace_parameter_ray(theta, g.cfg.rays.target_potential, g.cfg);
    const ParabolicPoint p = locate_parabolic(a.d, ray.landing_estimate, theta.period(), g.cfg);
    return {p.c, p.z, p.period};
  }
  if (a.z.empty() || a.period < 1) fail(ErrorKind::InvalidArgument, "give --angle, or --c, --z and --m");
  return {parse_complex(a.c), parse_complex(a.z), a.period};
}

QuadDiff qd_input(const QdArgs& a, bool doubles) {
  if (!a.qd.empty()) {
    try {
      return quad_diff_from_json(Json::parse(a.qd));
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::InvalidArgument, std::string("--qd: ") + e.what());
    }
  }
  std::mt19937_64 rng(g.cfg.seed);
  return random_quad_diff(rng, a.poles, doubles);
}

int cmd_qd_verify(const QdArgs& a) {
  require_degree(a.d);
  if (a.kind == "case2") {
    const auto [c0, z0, ell] = parabolic_input(a);
    const Case2Report r = case2_certificate(a.d, c0, z0, ell, g.cfg);
    const double tol = a.tol > 0 ? a.tol : 1e-6;
    const bool ok = r.residual < tol && std::abs(r.dP_dc) > a.min_derivative;
    emit({{"case", "case2"},
          {"d", a.d},
          {"c", to_json(c0)},
          {"z", to_json(z0)},
          {"ell", r.ell},
          {"dP_dc", to_json(r.dP_dc)},
          {"residual", r.residual},
          {"q", to_json(r.q)},
          {"pushed", to_json(r.pushed)},
          {"pass", ok}});
    return ok ? 0 : exit_check_failed;
  }
  if (a.kind == "double-pole") {
    const auto [c0, z0, m] = parabolic_input(a);
    const DoublePoleReport r = double_pole_certificate(a.d, c0, z0, m, g.cfg);
    const double tol = a.tol > 0 ? a.tol : 1e-8;
    const bool ok = r.residual < tol && std::abs(r.rho_dot) > a.min_derivative;
    Json mu = Json::array();
    for (cplx v : r.mu.mu) mu.push_back(to_json(v));
    emit({{"case", "double-pole"},
          {"d", a.d},
          {"c", to_json(c0)},
          {"z", to_json(z0)},
          {"m", r.m},
          {"rho", to_json(r.rho)},
          {"rho_dot", to_json(r.rho_dot)},
          {"mu", mu},
          {"mu_sum", to_json(r.mu_sum)},
          {"mu_closure", r.mu.closure},
          {"mu_conditioning", r.mu.conditioning},
          {"residual", r.residual},
          {"q", to_json(r.q)},
          {"pushed", to_json(r.pushed)},
          {"pass", ok}});
    return ok ? 0 : exit_check_failed;
  }
  if (a.kind == "levin") {
    const cplx c = parse_complex(a.c);
    const QuadDiff q = qd_input(a, true);
    const QuadDiff p = pushforward(a.d, c, q, g.cfg.tol);
    std::mt19937_64 rng(g.cfg.seed + 1);
    std::uniform_real_distribution<double> u(-2.5, 2.5);
    double worst = 0;
    for (int i = 0; i < a.samples; ++i) {
      const double re = u(rng), im = u(rng);
      const cplx exact = pushforward_bruteforce(a.d, c, q, {re, im});
      worst = std::max(worst, std::abs(p({re, im}) - exact) / std::abs(exact));
    }
    const double tol = a.tol > 0 ? a.tol : 1e-9;
    emit({{"case", "levin"},
          {"d", a.d},
          {"c", to_json(c)},
          {"q", to_json(q)},
          {"pushed", to_json(p)},
          {"samples", a.samples},
          {"max_relative_error", worst},
          {"pass", worst < tol}});
    return worst < tol ? 0 : exit_check_failed;
  }
  if (a.kind == "norm") {
    const QuadDiff q = a.qd.empty() ? QuadDiff({{0.0, 0.0, 1.0}}) : qd_input(a, false);
    const double r = a.radius > 0 ? a.radius : 1.0;
    const NormEstimate n = qd_norm(q, {parse_complex(a.center), 0, r});
    Json out{{"case", "norm"}, {"q", to_json(q)}, {"center", to_json(parse_complex(a.center))},
             {"radius", r},    {"norm", n.value}, {"error", n.error}};
    bool ok = true;
    if (a.qd.empty() && parse_complex(a.center) == cplx(0)) {
      // dz^2/z on |z| < R has norm 2 pi R.
      const double rel = std::abs(n.value - 2 * std::numbers::pi * r) / (2 * std::numbers::pi * r);
      out["expected"] = 2 * std::numbers::pi * r;
      out["relative_error"] = rel;
      ok = rel < (a.tol > 0 ? a.tol : 1e-3);
      out["pass"] = ok;
    }
    emit(out);
    return ok ? 0 : exit_check_failed;
  }
  if (a.kind == "contract") {
    const cplx c = parse_complex(a.c);
    const QuadDiff q = qd_input(a, false);
    const ContractionReport r = contraction_check(a.d, c, q, a.radius > 0 ? a.radius : 3.0);
    emit({{"case", "contract"},
          {"d", a.d},
          {"c", to_json(c)},
          {"q", to_json(q)},
          {"radius", r.radius},
          {"preimage_radius", r.preimage_radius},
          {"pushed_norm", r.pushed.value},
          {"pushed_error", r.pushed.error},
          {"preimage_norm", r.preimage.value},
          {"preimage_error", r.preimage.error},
          {"full_norm", r.full.value},
          {"full_error", r.full.error},
          {"pass", r.holds}});
    return r.holds ? 0 : exit_check_failed;
  }
  fail(ErrorKind::InvalidArgument, "unknown case " + a.kind);
}

struct MonodromyArgs {
  int d = 2;
  std::string angle;
  int n = 0;
  double radius = 1e-2;
  int turns = 1;
  bool dump_paths = false;
};

int cmd_monodromy(const MonodromyArgs& a) {
  require_degree(a.d);
  const Angle theta = Angle::parse(a.angle, a.d);
  if (a.n != theta.period())
    fail(ErrorKind::InvalidArgument, "--n " + std::to_string(a.n) + " differs from the period " +
                                         std::to_string(theta.period()) + " of " + theta.to_string());
  if (a.turns == 0) fail(ErrorKind::InvalidArgument, "--turns must be non-zero");
  const MonodromyExperiment ex = monodromy_experiment(theta, a.radius, a.turns, g.cfg);
  Json out{{"d", a.d}, {"angle", to_json(theta)}, {"n", a.n}};
  merge(out, to_json(ex.report));
  out["isolation"] = ex.isolation;
  out["label_angle"] = to_json(ex.label_angle);

  if (a.dump_paths) {
    // Root positions at each vertex of the loop, one CSV per root.
    const auto circle = circle_path(ex.center, a.radius, std::arg(ex.report.base - ex.center), a.turns);
    std::vector<std::string> csv(ex.report.roots.size(), "s,re,im\n");
    std::vector<cplx> roots = ex.report.roots;
    char buf[96];
    for (std::size_t v = 0; v < circle.size(); ++v) {
      if (v > 0) roots = continue_roots(a.d, a.n, roots, {circle[v - 1], circle[v]});
      for (std::size_t i = 0; i < roots.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", static_cast<double>(v) / 64, roots[i].real(),
                      roots[i].imag());
        csv[i] += buf;
      }
    }
    Json files = Json::array();
    for (std::size_t i = 0; i < csv.size(); ++i) {
      const std::string label = ex.report.labels[i] ? ex.report.labels[i]->to_string() : "root" + std::to_string(i);
      const auto path = output_file("monodromy_" + file_safe(theta) + "_" + label + ".csv");
      write_file(path, csv[i]);
      files.push_back(path.string());
    }
    out["paths"] = files;
  }
  emit(out);
  return ex.report.match ? 0 : exit_check_failed;
}

struct RenderArgs {
  int d = 2;
  int width = 800, height = 800, iterations = 512;
  std::string center = "0";
  double extent = 2;
  std::string format = "svg";
  std::vector<std::string> angles;
  bool dynamical = false;
  std::string c = "0";
  double potential = 0;
};

int cmd_render_multibrot(const RenderArgs& a) {
  require_degree(a.d);
  if (a.width < 1 || a.height < 1 || a.iterations < 1)
    fail(ErrorKind::InvalidArgument, "width, height and iterations must be positive");
  const EscapeGrid grid = multibrot_escape(a.d, parse_complex(a.center), a.extent, a.width, a.height, a.iterations);
  const auto path = output_file("multibrot_d" + std::to_string(a.d) + "." + a.format);
  write_file(path, a.format == "csv" ? escape_csv(grid) : escape_svg(grid));
  const auto bounded = std::count(grid.counts.begin(), grid.counts.end(), a.iterations);
  emit({{"d", a.d},
        {"width", a.width},
        {"height", a.height},
        {"iterations", a.iterations},
        {"center", to_json(grid.center)},
        {"extent", a.extent},
        {"bounded_pixels", bounded},
        {"file", path.string()}});
  return 0;
}

int cmd_render_rays(const RenderArgs& a) {
  require_degree(a.d);
  if (a.angles.empty()) fail(ErrorKind::InvalidArgument, "--angles needs at least one angle");
  const double potential = a.potential > 0 ? a.potential : g.cfg.rays.target_potential;
  const cplx c = parse_complex(a.c);
  std::vector<RayPath> rays;
  for (const auto& text : a.angles) {
    const Angle t = Angle::parse(text, a.d);
    rays.push_back(a.dynamical ? trace_dynamical_ray(c, t, potential, g.cfg) : trace_parameter_ray(t, potential, g.cfg));
  }
  const std::string stem = a.dynamical ? "dynamical_rays_d" : "parameter_rays_d";
  const auto svg = output_file(stem + std::to_string(a.d) + ".svg");
  write_file(svg, rays_svg(rays, a.extent));
  for (const auto& r : rays) {
    const auto csv = output_file(stem + std::to_string(a.d) + "_" + file_safe(r.angle) + ".csv");
    write_file(csv, ray_csv(r));
    Json line{{"angle", to_json(r.angle)}, {"parameter", r.parameter}, {"converged", r.converged},
              {"landing", to_json(r.landing_estimate)}, {"samples", r.samples.size()}, {"csv", csv.string()}};
    if (!r.parameter) line["c"] = to_json(r.c);
    line["bifurcation"] = r.bifurcation ? to_json(*r.bifurcation) : Json(nullptr);
    emit(line);
  }
  emit({{"svg", svg.string()}});
  return 0;
}

struct VerifyArgs {
  std::string profile = "desk";
  std::vector<int> criteria;
};

int cmd_verify(const VerifyArgs& a) {
  if (a.profile != "desk") fail(ErrorKind::InvalidArgument, "unknown profile " + a.profile);
  for (int id : a.criteria)
    if (id < 1 || id > criterion_count) fail(ErrorKind::InvalidArgument, "no criterion " + std::to_string(id));
  bool all = true;
  std::vector<int> ids = a.criteria;
  if (ids.empty())
    for (int id = 1; id <= criterion_count; ++id) ids.push_back(id);
  for (int id : ids) {
    const CriterionResult r = run_criterion(id, g.cfg);
    all = all && r.pass();
    if (g.pretty) {
      std::printf("%s  %2d  %-40s %8.2f s / %4.0f s\n", r.pass() ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds,
                  r.budget);
      for (const auto& f : r.failures) std::printf("            failed: %s\n", f.c_str());
      std::fflush(stdout);
    } else {
      emit(to_json(r));
      std::cout.flush();
    }
  }
  return all ? 0 : exit_check_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Combinatorics, certificates and monodromy for the periodic curves of z^d + c"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", g.config_path, "JSON file with Config fields")->check(CLI::ExistingFile);
  app.add_option("--output-dir", g.output_dir, "directory for CSV/SVG artifacts");
  app.add_option("--threads", g.threads, "thread cap (overrides DYNATOMIC_THREADS)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g.seed, "random seed")->check(CLI::NonNegativeNumber);
  app.add_flag("--pretty", g.pretty, "indented JSON; a table for verify");

  std::function<int()> action;

  AngleArgs kn;
  auto* k = app.add_subcommand("kneading", "kneading sequence of a periodic angle");
  k->add_option("--d", kn.d)->required();
  k->add_option("--angle", kn.angle, "p/q")->required();
  k->callback([&] { action = [&] { return cmd_kneading(kn); }; });

  AngleArgs cl;
  auto* c = app.add_subcommand("classify", "primitive/satellite verdict for gamma(angle)");
  c->add_option("--d", cl.d)->required();
  c->add_option("--angle", cl.angle, "p/q")->required();
  c->callback([&] { action = [&] { return cmd_classify(cl); }; });

  ConnectArgs co;
  auto* cn = app.add_subcommand("connect", "moves joining an itinerary to the special orbit");
  cn->add_option("--d", co.d)->required();
  cn->add_option("--n", co.n)->required();
  cn->add_option("--itinerary", co.itinerary)->required();
  cn->callback([&] { action = [&] { return cmd_connect(co); }; });

  PeriodArgs tr;
  auto* t = app.add_subcommand("transitivity", "is the move graph on exact-period-n itineraries connected");
  t->add_option("--d", tr.d)->required();
  t->add_option("--n", tr.n)->required();
  t->callback([&] { action = [&] { return cmd_transitivity(tr); }; });

  PeriodArgs pa;
  auto* p = app.add_subcommand("parabolics", "parabolic parameters from the exact resultant");
  p->add_option("--d", pa.d)->required();
  p->add_option("--n", pa.n)->required();
  p->callback([&] { action = [&] { return cmd_parabolics(pa); }; });

  QdArgs qa;
  auto* q = app.add_subcommand("qd-verify", "quadratic-differential certificates");
  q->add_option("--d", qa.d)->required();
  q->add_option("--case", qa.kind)->required()->check(CLI::IsMember({"case2", "double-pole", "levin", "norm", "contract"}));
  q->add_option("--c", qa.c, "parameter, re or re,im");
  q->add_option("--z", qa.z, "periodic point, re or re,im");
  q->add_option("--m,--ell", qa.period, "period used by the certificate");
  q->add_option("--angle", qa.angle, "locate the parabolic at the landing point of this parameter ray");
  q->add_option("--qd", qa.qd, "JSON list of {a, c2, c1}");
  q->add_option("--poles", qa.poles, "random differential size when --qd is absent")->check(CLI::PositiveNumber);
  q->add_option("--samples", qa.samples, "points for the levin comparison")->check(CLI::PositiveNumber);
  q->add_option("--radius", qa.radius, "disk radius for norm and contract");
  q->add_option("--center", qa.center, "disk centre for norm");
  q->add_option("--tol", qa.tol, "pass threshold for the residual or error");
  q->add_option("--min-derivative", qa.min_derivative, "lower bound for |dP/dc| or |rho'|");
  q->callback([&] { action = [&] { return cmd_qd_verify(qa); }; });

  MonodromyArgs ma;
  auto* m = app.add_subcommand("monodromy", "permutation of period-n points around gamma(angle)");
  m->add_option("--d", ma.d)->required();
  m->add_option("--angle", ma.angle, "p/q")->required();
  m->add_option("--n", ma.n)->required();
  m->add_option("--radius", ma.radius)->check(CLI::PositiveNumber);
  m->add_option("--turns", ma.turns, "negative for clockwise");
  m->add_flag("--dump-paths", ma.dump_paths, "write one CSV per root along the loop");
  m->callback([&] { action = [&] { return cmd_monodromy(ma); }; });

  RenderArgs ra;
  auto* r = app.add_subcommand("render", "SVG/CSV figures");
  r->require_subcommand(1);
  auto* rm = r->add_subcommand("multibrot", "escape-time picture");
  rm->add_option("--d", ra.d)->required();
  rm->add_option("--width", ra.width);
  rm->add_option("--height", ra.height);
  rm->add_option("--iterations", ra.iterations);
  rm->add_option("--center", ra.center);
  rm->add_option("--extent", ra.extent, "half-width of the window")->check(CLI::PositiveNumber);
  rm->add_option("--format", ra.format)->check(CLI::IsMember({"svg", "csv"}));
  rm->callback([&] { action = [&] { return cmd_render_multibrot(ra); }; });
  auto* rr = r->add_subcommand("rays", "parameter or dynamical rays");
  rr->add_option("--d", ra.d)->required();
  rr->add_option("--angles", ra.angles, "p/q list")->required()->delimiter(',');
  rr->add_flag("--dynamical", ra.dynamical, "dynamical rays of z^d + c instead of parameter rays");
  rr->add_option("--c", ra.c, "parameter for --dynamical");
  rr->add_option("--potential", ra.potential, "final potential");
  rr->add_option("--extent", ra.extent, "half-width of the SVG window")->check(CLI::PositiveNumber);
  rr->callback([&] { action = [&] { return cmd_render_rays(ra); }; });

  VerifyArgs va;
  auto* v = app.add_subcommand("verify", "the acceptance suite");
  v->add_option("--profile", va.profile);
  v->add_option("--criteria", va.criteria, "subset, e.g. 1,5,12")->delimiter(',');
  v->callback([&] { action = [&] { return cmd_verify(va); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_usage;
  }

  try {
    if (!g.config_path.empty()) g.cfg = load_config(g.config_path);
    if (!g.output_dir.empty()) g.cfg.output_dir = g.output_dir;
    if (g.seed >= 0) g.cfg.seed = static_cast<std::uint64_t>(g.seed);
    if (g.threads >= 0) g.cfg.threads = static_cast<unsigned>(g.threads);
    if (g.cfg.threads > 0) set_thread_cap(g.cfg.threads);
    return action();
  } catch (const Error& e) {
    std::cerr << dump(Json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}) << '\n';
    return is_usage_error(e.kind()) ? exit_usage : exit_check_failed;
  } catch (const std::exception& e) {
    std::cerr << dump(Json{{"error", "Internal"}, {"message", e.what()}}) << '\n';
    return exit_check_failed;
  }
}
