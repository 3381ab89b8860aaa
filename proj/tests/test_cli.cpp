#include "doctest.h"
#include "json_io.hpp"
#include "render.hpp"

using namespace dynatomic;
using namespace dynatomic::cli;

TEST_CASE("floats print with 17 significant digits") {
  CHECK(dump(Json(0.1)) == "0.10000000000000001");
  CHECK(dump(Json::array({1.0, 2, "x"})) == "[1,2,\"x\"]");
  CHECK(dump(Json(std::nan(""))) == "null");
  Json obj;
  obj["b"] = 1;
  obj["a"] = Json::array({0.5});
  CHECK(dump(obj) == "{\"b\":1,\"a\":[0.5]}");
  CHECK(dump(obj, 2) == "{\n  \"b\": 1,\n  \"a\": [\n    0.5\n  ]\n}");
  // Every double survives a round trip.
  for (double v : {1.0 / 3, -2.5e-300, 6.02214076e23, 0.1 + 0.2}) CHECK(Json::parse(dump(Json(v))).get<double>() == v);
}

TEST_CASE("config overrides") {
  Config cfg;
  apply_config(Json::parse(R"({"seed": 4, "tolerances": {"landing": 1e-5}, "budgets": {"words": 100}})"), cfg);
  CHECK(cfg.seed == 4);
  CHECK(cfg.tol.landing == 1e-5);
  CHECK(cfg.tol.residual == Config{}.tol.residual);
  CHECK(cfg.budgets.words == 100);
  CHECK_THROWS_AS(apply_config(Json::parse(R"({"seeds": 4})"), cfg), Error);
  CHECK_THROWS_AS(apply_config(Json::parse(R"({"tolerances": {"landing": -1}})"), cfg), Error);
  CHECK_THROWS_AS(apply_config(Json::parse(R"({"seed": "x"})"), cfg), Error);
}

TEST_CASE("serializers") {
  const QuadDiff q({{cplx(1, 2), 0.0, 1.0}});
  CHECK(dump(to_json(q)) == R"([{"a":[1,2],"c2":[0,0],"c1":[1,0]}])");
  const QuadDiff back = quad_diff_from_json(to_json(q));
  REQUIRE(back.terms().size() == 1);
  CHECK(back.terms()[0].a == cplx(1, 2));
  CHECK_THROWS_AS(quad_diff_from_json(Json::parse(R"([{"c1":[1,0]}])")), Error);

  const Json plan = to_json(connect(2, 3, Word::parse("100", 2)));
  CHECK(dump(plan) ==
        R"({"source":"100","target":"101","moves":[{"center":"4/7","kind":"transposition","a":"100","b":"101","winding":1}],"digit_sums":[1,2]})");
  const Json cls = to_json(classify_angle(Angle(6, 7, 2)), std::nullopt);
  CHECK(cls["verdict"] == "SpecialSatellite");
  CHECK(cls["eta"] == "5/7");

  CHECK(parse_complex("1.5") == cplx(1.5, 0));
  CHECK(parse_complex("-0.75,0.25") == cplx(-0.75, 0.25));
  CHECK_THROWS_AS(parse_complex("1,"), Error);
  CHECK_THROWS_AS(parse_complex("x"), Error);
  CHECK_THROWS_AS(parse_complex("1,2,3"), Error);
}

TEST_CASE("escape-time grid") {
  const EscapeGrid g = multibrot_escape(2, 0.0, 2.0, 40, 40, 200);
  // Pixel centres are symmetric about the real axis, and so is the set.
  for (int row = 0; row < 20; ++row)
    for (int col = 0; col < 40; ++col) {
      CHECK(g.pixel(col, row) == std::conj(g.pixel(col, 39 - row)));
      CHECK(g.counts[static_cast<std::size_t>(row * 40 + col)] == g.counts[static_cast<std::size_t>((39 - row) * 40 + col)]);
    }
  // c = -0.05 + 0.05i lies in the main cardioid; c = 1.95 escapes at once.
  CHECK(g.counts[19 * 40 + 19] == 200);
  CHECK(g.counts[19 * 40 + 39] < 3);
  const std::string svg = escape_svg(g);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(escape_csv(g).rfind("re,im,iterations\n", 0) == 0);
}
