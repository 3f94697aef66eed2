#include <string>

#include "doctest.h"
#include "pcn/config.hpp"
#include "test_util.hpp"

using namespace pcn;
using testutil::q;

TEST_CASE("key-value parsing with comments and overrides") {
  auto cfg = Config::from_text(
      "# run setup\n"
      "map.kind = line\n"
      "  depth=4   # trailing comment\n"
      "\n"
      "name = first\n"
      "name = second\n");
  CHECK(cfg.has("map.kind"));
  CHECK(cfg.str("map.kind") == "line");
  CHECK(cfg.integer("depth") == 4);
  CHECK(cfg.str("name") == "second");  // later assignment wins
  CHECK_FALSE(cfg.has("missing"));
}

TEST_CASE("malformed lines are reported with their number") {
  try {
    Config::from_text("a = 1\nnonsense line\n");
    FAIL("expected a parse error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
}

TEST_CASE("typed getters name the offending key") {
  auto cfg = Config::from_text("count = seven\nratio = 1/3\n");
  try {
    (void)cfg.integer("count");
    FAIL("expected a value error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("count") != std::string::npos);
  }
  try {
    (void)cfg.integer("absent");
    FAIL("expected a missing-key error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("absent") != std::string::npos);
    CHECK(std::string(e.what()).find("missing") != std::string::npos);
  }
  CHECK(cfg.scalar("ratio", Backend::exact) == q(1, 3));
  CHECK(cfg.integer_or("absent", 9) == 9);
  CHECK(cfg.number_or("absent", 0.5) == 0.5);
  CHECK(cfg.str_or("absent", "d") == "d");
  CHECK(cfg.scalar_or("absent", q(2, 7)) == q(2, 7));
}

TEST_CASE("scalar lists parse both backends") {
  auto cfg = Config::from_text("xs = 1/2, -3/4, 2\nys = 0.25, 0.5\n");
  auto xs = cfg.scalar_list("xs", Backend::exact);
  REQUIRE(xs.size() == 3);
  CHECK(xs[0] == q(1, 2));
  CHECK(xs[1] == q(-3, 4));
  CHECK(xs[2] == q(2));
  auto ys = cfg.scalar_list("ys", Backend::floating);
  REQUIRE(ys.size() == 2);
  CHECK(ys[0].to_double() == 0.25);
  CHECK(ys[1].to_double() == 0.5);
  auto ns = cfg.number_list_or("absent", {1.0, 2.0});
  REQUIRE(ns.size() == 2);
  CHECK(ns[1] == 2.0);
}

TEST_CASE("line maps load from slopes, intercepts, breakpoints") {
  auto cfg = Config::from_text(
      "map.kind = line\n"
      "map.slopes = 1/2, 1/2\n"
      "map.intercepts = 0, 1/2\n"
      "map.breakpoints = 2/5\n");
  LoadedMap m = load_map(cfg, Backend::exact);
  CHECK_FALSE(m.is_circle());
  REQUIRE(m.line.has_value());
  CHECK(m.line->branches() == 2);
  CHECK(m.line->breaks().at(0) == q(2, 5));
  CHECK(m.line->ifs().branch(2).intercept() == q(1, 2));
}

TEST_CASE("the kind is inferred when unambiguous") {
  auto line_cfg = Config::from_text(
      "map.slopes = 1/2, 1/2\n"
      "map.intercepts = 0, 1/2\n"
      "map.breakpoints = 1/2\n");
  CHECK_FALSE(load_map(line_cfg, Backend::exact).is_circle());

  auto circle_cfg = Config::from_text(
      "map.lambda = 1/2\n"
      "map.intercepts = 7/10\n");
  LoadedMap c = load_map(circle_cfg, Backend::exact);
  CHECK(c.is_circle());
  REQUIRE(c.circle.has_value());
  CHECK(c.circle->arcs() == 1);
  CHECK(c.circle->lambda() == q(1, 2));
}

TEST_CASE("circle maps with several arcs need their cut points") {
  auto cfg = Config::from_text(
      "map.kind = circle\n"
      "map.lambda = 1/2\n"
      "map.intercepts = 0, 9/20\n"
      "map.breakpoints = 1/2\n");
  LoadedMap m = load_map(cfg, Backend::exact);
  REQUIRE(m.is_circle());
  CHECK(m.circle->arcs() == 2);
  CHECK(m.circle->cuts()[0] == q(1, 2));

  auto missing = Config::from_text(
      "map.kind = circle\n"
      "map.lambda = 1/2\n"
      "map.intercepts = 0, 9/20\n");
  try {
    load_map(missing, Backend::exact);
    FAIL("expected a missing-key error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("map.breakpoints") != std::string::npos);
  }
}

TEST_CASE("bad map descriptions are rejected") {
  auto bad_kind = Config::from_text(
      "map.kind = torus\n"
      "map.lambda = 1/2\n"
      "map.intercepts = 0\n");
  CHECK_THROWS_AS(load_map(bad_kind, Backend::exact), ValidationError);

  auto mismatch = Config::from_text(
      "map.kind = line\n"
      "map.slopes = 1/2, 1/2, 1/2\n"
      "map.intercepts = 0, 1/2\n"
      "map.breakpoints = 1/2\n");
  CHECK_THROWS_AS(load_map(mismatch, Backend::exact), ValidationError);

  auto nothing = Config::from_text("tolerance = 1e-9\n");
  CHECK_THROWS_AS(load_map(nothing, Backend::exact), ValidationError);
}
