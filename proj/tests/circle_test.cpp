#include <optional>
#include <vector>

#include "doctest.h"
#include "pcn/circle.hpp"
#include "test_util.hpp"

using namespace pcn;
using testutil::q;

namespace {

CircleAffineMap rotation_like() {
  // One arc: x -> {x/2 + 7/10}
  return CircleAffineMap(q(1, 2), {}, {q(7, 10)});
}

}  // namespace

TEST_CASE("fractional part in both backends") {
  CHECK(frac_part(q(7, 2)) == q(1, 2));
  CHECK(frac_part(q(-1, 4)) == q(3, 4));
  CHECK(frac_part(q(-3)) == q(0));
  CHECK(frac_part(q(5)) == q(0));
  CHECK(frac_part(Scalar::real(2.25)).to_double() == 0.25);
  CHECK(frac_part(Scalar::real(-0.75)).to_double() == 0.25);
  Scalar y = frac_part(Scalar::real(1.0 - 1e-17));  // rounds up to 1.0
  CHECK(y.to_double() >= 0.0);
  CHECK(y.to_double() < 1.0);
}

TEST_CASE("circle map validation") {
  CHECK_THROWS_AS(CircleAffineMap(q(1), {}, {q(0)}), ValidationError);
  CHECK_THROWS_AS(CircleAffineMap(q(1, 2), {q(0)}, {q(0), q(0)}), ValidationError);
  CHECK_THROWS_AS(CircleAffineMap(q(1, 2), {q(1, 2), q(1, 2)}, {q(0), q(0), q(0)}),
                  ValidationError);
  CHECK_THROWS_AS(CircleAffineMap(q(1, 2), {q(3, 4), q(1, 4)}, {q(0), q(0), q(0)}),
                  ValidationError);
  CHECK_THROWS_AS(CircleAffineMap(q(1, 2), {q(1, 2)}, {q(0)}), ValidationError);
  CHECK_NOTHROW(CircleAffineMap(q(0), {}, {q(1, 3)}));  // constant maps are legal
}

TEST_CASE("worked circle steps") {
  auto f = rotation_like();
  CHECK(f.step(q(0)) == q(7, 10));
  CHECK(f.step(q(7, 10)) == q(1, 20));  // 7/20 + 7/10 = 21/20 wraps
  CHECK(f.branch_index(q(99, 100)) == 1);

  CircleAffineMap g(q(1, 2), {q(1, 2)}, {q(0), q(9, 20)});
  CHECK(g.branch_index(q(1, 4)) == 1);
  CHECK(g.branch_index(q(1, 2)) == 2);
  CHECK(g.step(q(3, 4)) == q(33, 40));
  CHECK(g.step(q(5, 4)) == g.step(q(1, 4)));  // arguments are taken mod 1
}

TEST_CASE("rotation composes after the map") {
  auto f = rotation_like();
  auto fr = f.rotated(q(1, 5));
  CHECK(fr.step(q(0)) == q(9, 10));
  CHECK(fr.step(q(7, 10)) == frac_part(f.step(q(7, 10)) + q(1, 5)));
}

TEST_CASE("gap of the one-arc map") {
  auto f = rotation_like();
  GapInfo g = gap(f);
  // image is [0, 1/5] u [7/10, 1]; the hole (1/5, 7/10) has midpoint 9/20
  CHECK(g.c == q(9, 20));
  CHECK(g.ell == q(1, 4));
  REQUIRE(g.image.size() == 2);
  CHECK(g.image[0].first == q(0));
  CHECK(g.image[0].second == q(1, 5));
  CHECK(g.image[1].first == q(7, 10));
  CHECK(g.image[1].second == q(1));
}

TEST_CASE("gap tie-break picks the smaller midpoint") {
  // Two complementary arcs of equal length 9/20; midpoints 11/40 and 31/40.
  CircleAffineMap f(q(1, 10), {q(1, 2)}, {q(0), q(9, 20)});
  GapInfo g = gap(f);
  CHECK(g.ell == q(9, 40));
  CHECK(g.c == q(11, 40));
}

TEST_CASE("gap requires a genuine contraction") {
  CHECK_THROWS_AS(gap(CircleAffineMap(q(0), {}, {q(1, 3)})), ValidationError);
  CHECK_THROWS_AS(reduce(CircleAffineMap(q(0), {}, {q(1, 3)})), ValidationError);
}

TEST_CASE("worked reduction of the one-arc map") {
  auto f = rotation_like();
  Reduction red = reduce(f);
  CHECK(red.shift_factor == q(2));
  REQUIRE(red.line_map.branches() == 2);
  CHECK(red.line_map.breaks().at(0) == q(11, 20));
  CHECK(red.line_map.ifs().branch(1).slope() == q(1, 2));
  CHECK(red.line_map.ifs().branch(1).intercept() == q(19, 40));
  CHECK(red.line_map.ifs().branch(2).slope() == q(1, 2));
  CHECK(red.line_map.ifs().branch(2).intercept() == q(-1, 40));
}

TEST_CASE("the reduced line map extends the recentred circle map") {
  testutil::InstanceGen gen(24601);
  for (int trial = 0; trial < 8; ++trial) {
    // random exact circle maps with 1..3 arcs
    int arcs = 1 + trial % 3;
    std::vector<Scalar> cuts, bs;
    for (int i = 0; i + 1 < arcs; ++i)
      cuts.push_back(q(gen.pick(1, 19), 20));
    std::sort(cuts.begin(), cuts.end());
    bool dup = false;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      if (cuts[i].eq(cuts[i + 1])) dup = true;
    if (dup) continue;
    for (int i = 0; i < arcs; ++i) bs.push_back(q(gen.pick(0, 39), 40));
    long num = gen.pick(1, 9);
    CircleAffineMap f(q(num, 10), cuts, bs);

    std::optional<Reduction> maybe;
    try {
      maybe.emplace(reduce(f));
    } catch (const ValidationError&) {
      continue;  // image may cover the whole circle; no gap to cut at
    }
    const Reduction& red = *maybe;
    const Scalar& c = red.gap.c;

    for (int j = 0; j <= 40; ++j) {
      Scalar x = q(j, 40);
      if (!(x < q(1))) continue;
      Scalar via_line = red.line_map.step(frac_part(x)).first;
      Scalar via_circle = frac_part(f.step(frac_part(x + c)) - c);
      // G agrees with the conjugated circle map wherever both are defined;
      // the affine extension may leave [0,1) only off the invariant region
      if (via_line < q(0) || !(via_line < q(1))) continue;
      CHECK(frac_part(via_line) == via_circle);
    }
  }
}

TEST_CASE("rotated orbits match shifted-breakpoint line orbits") {
  auto f = rotation_like();
  Reduction red = reduce(f);
  const Scalar& sf = red.shift_factor;
  const Scalar& c = red.gap.c;

  for (long dn : {1L, 3L, 7L}) {
    Scalar delta = q(dn, 40);  // inside [0, ell) = [0, 1/4)
    auto lane = red.line_map.shifted(-(delta * sf));
    CircleAffineMap g = f.rotated(delta);

    Scalar y = q(1, 3);                     // line coordinate
    Scalar zc = frac_part(y + delta * sf + c);  // circle coordinate
    for (int t = 0; t < 20; ++t) {
      y = lane.step(y).first;
      zc = g.step(zc);
      CHECK(frac_part(y + delta * sf + c) == zc);
    }
  }
}

TEST_CASE("negative rotations reduce through the recentred base") {
  auto f = rotation_like();
  Reduction neg = reduce(f.rotated(-reduce(f).gap.ell));
  const Scalar& sf = neg.shift_factor;
  const Scalar& c = neg.gap.c;
  Scalar ell = reduce(f).gap.ell;

  for (long dn : {-9L, -5L, -1L}) {
    Scalar delta = q(dn, 40);  // in (-ell, 0) = (-1/4, 0)
    Scalar t = delta + ell;    // offset against the rotated base
    auto lane = neg.line_map.shifted(-(t * sf));
    CircleAffineMap g = f.rotated(delta);

    Scalar y = q(1, 3);
    Scalar zc = frac_part(y + t * sf + c);
    for (int s = 0; s < 20; ++s) {
      y = lane.step(y).first;
      zc = g.step(zc);
      CHECK(frac_part(y + t * sf + c) == zc);
    }
  }
}
