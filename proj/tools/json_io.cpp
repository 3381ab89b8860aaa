#include "json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dynatomic/error.hpp"

namespace dynatomic::cli {

namespace {

void dump_into(const Json& j, int indent, int depth, std::string& out) {
  const auto newline = [&](int level) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * level), ' ');
  };
  switch (j.type()) {
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        dump_into(e, indent, depth + 1, out);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += indent < 0 ? ":" : ": ";
        dump_into(value, indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    default:
      out += j.dump();
  }
}

template <class T>
void read_field(const Json& obj, const char* key, T& field) {
  if (!obj.contains(key)) return;
  try {
    field = obj.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("config field ") + key + ": " + e.what());
  }
}

void check_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(ErrorKind::InvalidArgument, "config " + where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) fail(ErrorKind::InvalidArgument, "unknown config field " + where + key);
  }
}

Json cycles_json(const std::vector<std::vector<Word>>& cycles) {
  Json out = Json::array();
  for (const auto& cy : cycles) {
    Json c = Json::array();
    for (const auto& w : cy) c.push_back(w.to_string());
    out.push_back(std::move(c));
  }
  return out;
}

cplx complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(ErrorKind::InvalidArgument, "complex numbers are [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::string dump(const Json& j, int indent) {
  std::string out;
  dump_into(j, indent, 0, out);
  return out;
}

void apply_config(const Json& j, Config& cfg) {
  check_keys(j, "", {"tolerances", "rays", "budgets", "output_dir", "seed", "threads"});
  if (j.contains("tolerances")) {
    const Json& t = j["tolerances"];
    check_keys(t, "tolerances.",
               {"residual", "landing", "cluster", "pole_merge", "pole_collision", "multiplier", "slow_landing"});
    read_field(t, "residual", cfg.tol.residual);
    read_field(t, "landing", cfg.tol.landing);
    read_field(t, "cluster", cfg.tol.cluster);
    read_field(t, "pole_merge", cfg.tol.pole_merge);
    read_field(t, "pole_collision", cfg.tol.pole_collision);
    read_field(t, "multiplier", cfg.tol.multiplier);
    read_field(t, "slow_landing", cfg.tol.slow_landing);
    for (double v : {cfg.tol.residual, cfg.tol.landing, cfg.tol.cluster, cfg.tol.pole_merge, cfg.tol.pole_collision,
                     cfg.tol.multiplier, cfg.tol.slow_landing})
      if (!(v > 0)) fail(ErrorKind::InvalidArgument, "tolerances must be positive");
  }
  if (j.contains("rays")) {
    const Json& r = j["rays"];
    check_keys(r, "rays.",
               {"escape_radius", "rungs_per_halving", "target_potential", "landing_depth", "landing_step",
                "landing_samples", "max_newton", "max_step_halvings"});
    read_field(r, "escape_radius", cfg.rays.escape_radius);
    read_field(r, "rungs_per_halving", cfg.rays.rungs_per_halving);
    read_field(r, "target_potential", cfg.rays.target_potential);
    read_field(r, "landing_depth", cfg.rays.landing_depth);
    read_field(r, "landing_step", cfg.rays.landing_step);
    read_field(r, "landing_samples", cfg.rays.landing_samples);
    read_field(r, "max_newton", cfg.rays.max_newton);
    read_field(r, "max_step_halvings", cfg.rays.max_step_halvings);
  }
  if (j.contains("budgets")) {
    const Json& b = j["budgets"];
    check_keys(b, "budgets.", {"words", "exact_degree", "resultant_degree", "max_root_sweeps"});
    read_field(b, "words", cfg.budgets.words);
    read_field(b, "exact_degree", cfg.budgets.exact_degree);
    read_field(b, "resultant_degree", cfg.budgets.resultant_degree);
    read_field(b, "max_root_sweeps", cfg.budgets.max_root_sweeps);
  }
  read_field(j, "output_dir", cfg.output_dir);
  read_field(j, "seed", cfg.seed);
  read_field(j, "threads", cfg.threads);
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot read config " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidArgument, "config " + path + ": " + e.what());
  }
  Config cfg;
  apply_config(j, cfg);
  return cfg;
}

Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }
Json to_json(const Word& w) { return w.to_string(); }
Json to_json(const Angle& a) { return a.to_string(); }

Json to_json(const QuadDiff& q) {
  Json out = Json::array();
  for (const auto& t : q.terms()) out.push_back({{"a", to_json(t.a)}, {"c2", to_json(t.c2)}, {"c1", to_json(t.c1)}});
  return out;
}

Json to_json(const MonodromyMove& m) {
  Json out{{"center", to_json(m.center)}, {"kind", std::string(to_string(m.kind))}, {"a", to_json(m.a)}};
  if (m.kind == MoveKind::Transposition) out["b"] = to_json(m.b);
  else out["shift"] = m.shift;
  out["winding"] = m.winding;
  return out;
}

Json to_json(const ConnectionPlan& p) {
  Json moves = Json::array();
  for (const auto& m : p.moves) moves.push_back(to_json(m));
  return {{"source", to_json(p.source)}, {"target", to_json(p.target)}, {"moves", moves}, {"digit_sums", p.digit_sums}};
}

Json to_json(const ParabolicClass& pc, const std::optional<BetaFamily>& betas) {
  Json out{{"angle", to_json(pc.theta)}, {"kneading", pc.kneading.to_string()},
           {"verdict", std::string(to_string(pc.verdict))}};
  if (pc.witness) {
    out["t"] = pc.witness->t;
    out["s"] = pc.witness->s;
    out["w"] = to_json(pc.witness->w);
  } else {
    out["t"] = nullptr;
    out["s"] = nullptr;
    out["w"] = nullptr;
  }
  out["eta"] = pc.eta ? to_json(*pc.eta) : Json(nullptr);
  Json list = Json::array();
  if (betas)
    for (const auto& b : betas->betas)
      list.push_back({{"index", b.index}, {"angle", to_json(b.angle)}, {"lower", b.lower}, {"upper", b.upper}});
  out["beta_list"] = list;
  return out;
}

Json to_json(const PermutationReport& r) {
  return {{"center", to_json(r.center)},
          {"radius", r.radius},
          {"base", to_json(r.base)},
          {"turns", r.turns},
          {"cycles", cycles_json(r.observed_cycles)},
          {"predicted_cycles", r.has_prediction ? cycles_json(r.predicted_cycles) : Json(nullptr)},
          {"match", r.has_prediction ? Json(r.match) : Json(nullptr)},
          {"steps", r.stats.steps},
          {"rejected_steps", r.stats.rejected},
          {"min_separation", r.stats.min_separation}};
}

Json to_json(const CriterionResult& r) {
  return {{"criterion", r.id},     {"title", r.title},       {"status", r.pass() ? "PASS" : "FAIL"},
          {"seconds", r.seconds},  {"budget", r.budget},     {"measurements", r.measurements},
          {"failures", r.failures}};
}

QuadDiff quad_diff_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorKind::InvalidArgument, "a quadratic differential is a list of pole terms");
  QuadDiff q;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("a")) fail(ErrorKind::InvalidArgument, "pole terms need a pole \"a\"");
    const cplx c2 = t.contains("c2") ? complex_from_json(t["c2"]) : cplx(0);
    const cplx c1 = t.contains("c1") ? complex_from_json(t["c1"]) : cplx(0);
    q.add({complex_from_json(t["a"]), c2, c1});
  }
  return q;
}

cplx parse_complex(const std::string& text) {
  std::istringstream in(text);
  double re = 0, im = 0;
  char comma = 0;
  if (!(in >> re)) fail(ErrorKind::InvalidArgument, "not a complex number: " + text);
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) fail(ErrorKind::InvalidArgument, "not a complex number: " + text);
  }
  std::string rest;
  if (in >> rest) fail(ErrorKind::InvalidArgument, "not a complex number: " + text);
  return {re, im};
}

}  // namespace dynatomic::cli
