#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "pcn/scan.hpp"
#include "test_util.hpp"

using namespace pcn;
using testutil::q;

namespace {

CircleAffineMap wrapped_halving() {
  return CircleAffineMap(q(1, 2), {}, {q(7, 10)});
}

CircleAffineMap slow_circle() {
  // lambda near one keeps transients long, so small budgets leave gaps
  return CircleAffineMap(q(99, 100), {}, {q(7, 10)});
}

}  // namespace

TEST_CASE("worked two-point scan") {
  auto rep = scan(wrapped_halving(), 2, ClassifyBudget{});
  CHECK(rep.c == q(9, 20));
  CHECK(rep.ell == q(1, 4));
  CHECK(rep.delta0 == q(-1, 4));
  CHECK(rep.spacing == q(1, 6));
  CHECK(rep.grid == 2);
  REQUIRE(rep.results.size() == 2);
  CHECK(rep.results[0].delta == q(-1, 12));
  CHECK(rep.results[0].status == OrbitStatus::periodic);
  CHECK(rep.results[0].period == 3);
  CHECK(rep.results[1].delta == q(1, 12));
  CHECK(rep.results[1].status == OrbitStatus::periodic);
  CHECK(rep.results[1].period == 2);
  CHECK(rep.flagged.empty());
  CHECK(rep.flagged_fraction == 0.0);
}

TEST_CASE("scan validation") {
  CHECK_THROWS_AS(scan(wrapped_halving(), 0, ClassifyBudget{}), ValidationError);
  CircleAffineMap constant(q(0), {}, {q(1, 3)});
  CHECK_THROWS_AS(scan(constant, 4, ClassifyBudget{}), ValidationError);
}

TEST_CASE("grid deltas are symmetric and inside the band") {
  auto rep = scan(wrapped_halving(), 9, ClassifyBudget{});
  REQUIRE(rep.results.size() == 9);
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(rep.results[i].delta.abs() < rep.ell);
    if (i > 0) CHECK(rep.results[i - 1].delta < rep.results[i].delta);
  }
  // an odd grid is symmetric about zero and contains it
  CHECK(rep.results[4].delta == q(0));
  for (std::size_t i = 0; i < 9; ++i)
    CHECK(rep.results[i].delta == -rep.results[8 - i].delta);
}

TEST_CASE("thread count does not change any result") {
  ClassifyBudget budget;
  budget.max_iterations = 30000;
  auto one = scan(wrapped_halving(), 37, budget, 1);
  auto four = scan(wrapped_halving(), 37, budget, 4);
  REQUIRE(one.results.size() == four.results.size());
  for (std::size_t i = 0; i < one.results.size(); ++i) {
    CHECK(one.results[i].delta == four.results[i].delta);
    CHECK(one.results[i].status == four.results[i].status);
    CHECK(one.results[i].period == four.results[i].period);
    CHECK(one.results[i].iterations == four.results[i].iterations);
  }
  CHECK(four.threads == 4);
}

TEST_CASE("a larger budget only shrinks the flagged set") {
  auto run = [](long iters) {
    ClassifyBudget b;
    b.max_iterations = iters;
    return scan(slow_circle(), 24, b);
  };
  auto lo = run(2500);
  auto mid = run(8000);
  auto hi = run(120000);
  auto flags = [](const ScanReport& r) {
    long n = 0;
    for (const auto& d : r.results)
      if (d.status == OrbitStatus::undecided) ++n;
    return n;
  };
  auto nested = [](const ScanReport& a, const ScanReport& b) {
    REQUIRE(a.results.size() == b.results.size());
    for (std::size_t i = 0; i < a.results.size(); ++i)
      if (a.results[i].status == OrbitStatus::periodic) {
        CHECK(b.results[i].status == OrbitStatus::periodic);
        CHECK(b.results[i].period == a.results[i].period);
      }
  };
  nested(lo, mid);
  nested(mid, hi);
  CHECK(flags(hi) <= flags(mid));
  CHECK(flags(mid) <= flags(lo));
  CHECK(lo.flagged_fraction >= hi.flagged_fraction);
  CHECK(flags(hi) == 0);  // the big budget resolves the whole band
}

TEST_CASE("scanning the rotated map shifts the rows") {
  auto f = wrapped_halving();
  const long grid = 11;
  auto base = scan(f, grid, ClassifyBudget{});
  const long j = 3;
  Scalar delta0 = base.spacing * q(j);  // 3/24 = 1/8
  auto shifted = scan(f.rotated(delta0), grid, ClassifyBudget{});
  REQUIRE(shifted.results.size() == base.results.size());
  CHECK(shifted.ell == base.ell);

  for (long i = 0; i + j < grid; ++i) {
    const auto& a = shifted.results[static_cast<std::size_t>(i)];
    const auto& b = base.results[static_cast<std::size_t>(i + j)];
    CHECK(a.delta + delta0 == b.delta);
    CHECK(a.status == b.status);
    if (a.status == OrbitStatus::periodic && b.status == OrbitStatus::periodic)
      CHECK(a.period == b.period);
  }
}

TEST_CASE("box dimension of synthetic point sets") {
  BoxDimFit flat = box_dimension({0.5}, {0.1, 0.01});
  CHECK_FALSE(flat.degenerate);
  CHECK(flat.slope == 0.0);
  CHECK(flat.scales_used == 2);

  std::vector<double> grid;
  for (int i = 0; i <= 10000; ++i) grid.push_back(i * 1e-4);
  BoxDimFit line = box_dimension(grid, {1e-1, 1e-2, 1e-3});
  CHECK_FALSE(line.degenerate);
  CHECK(line.slope == doctest::Approx(1.0).epsilon(0.05));

  CHECK(box_dimension({}, {0.1, 0.01}).degenerate);
  CHECK(box_dimension({0.3, 0.7}, {0.1, 0.1}).degenerate);  // one distinct scale
  CHECK(box_dimension({0.3, 0.7}, {}).degenerate);
}

TEST_CASE("refinement of an everywhere-periodic scan stays empty") {
  auto rep = refine_and_boxdim(wrapped_halving(), 16, ClassifyBudget{}, 2,
                               {1e-2, 1e-3});
  CHECK(rep.base.flagged.empty());
  CHECK(rep.levels == 2);
  CHECK(rep.flagged_points.empty());
  CHECK(rep.fit.degenerate);
}

TEST_CASE("refinement keeps flagged points sorted inside the band") {
  ClassifyBudget tiny;
  tiny.max_iterations = 400;
  tiny.transient_skip = 64;
  auto rep = refine_and_boxdim(slow_circle(), 16, tiny, 2, {1e-2, 1e-3}, 2);
  double ell = rep.base.ell.to_double();
  CHECK(std::is_sorted(rep.flagged_points.begin(), rep.flagged_points.end()));
  for (double p : rep.flagged_points) {
    CHECK(p > -ell);
    CHECK(p < ell);
  }
  // with this budget the slow map cannot resolve anything
  CHECK(rep.base.flagged_fraction > 0.0);
  CHECK(!rep.flagged_points.empty());
}
