#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "pcn/symbolic.hpp"
#include "test_util.hpp"

using namespace pcn;
using testutil::q;

namespace {

// Branches x/2+1/4 and x/2+1/2 with the cut at 1/2: the cut is its own
// one-step preimage, so layers 0 and 1 collide.
PiecewiseContraction colliding_map() {
  return testutil::make_line({{1, 2}, {1, 2}}, {{1, 4}, {1, 2}}, {{1, 2}});
}

}  // namespace

TEST_CASE("strict preimages reject boundary-owned points") {
  auto f = testutil::halving_map();
  CHECK(preimage_points(f, {q(1, 2)}).empty());
  CHECK(preimage_points(f, {q(1, 4)}).empty());
  auto p = preimage_points(f, {q(1, 8)});
  REQUIRE(p.size() == 1);
  CHECK(p[0] == q(1, 4));
}

TEST_CASE("preimage layers of the halving map die out") {
  auto f = testutil::halving_map();
  PreimageSet pre = q_set(f, 5);
  REQUIRE(pre.depth == 5);
  REQUIRE(pre.layers.size() == 5);
  REQUIRE(pre.layers[0].size() == 1);
  CHECK(pre.layers[0][0] == q(1, 2));
  for (int j = 1; j < 5; ++j) CHECK(pre.layers[j].empty());
  CHECK(pre.layers_disjoint());
  auto all = pre.q_all();
  REQUIRE(all.size() == 1);
  CHECK(all[0] == q(1, 2));
}

TEST_CASE("a layer collision is kept and reported") {
  auto f = colliding_map();
  PreimageSet pre = q_set(f, 3);
  REQUIRE(pre.layers[0].size() == 1);
  CHECK(pre.layers[0][0] == q(1, 2));
  REQUIRE(pre.layers[1].size() == 1);
  CHECK(pre.layers[1][0] == q(1, 2));
  CHECK_FALSE(pre.layers_disjoint());
}

TEST_CASE("regularity of orbit points") {
  auto f = testutil::halving_map();
  CHECK_FALSE(is_regular(f, q(1, 2), 1));
  CHECK(is_regular(f, q(1, 4), 5));
  CHECK(is_regular(f, q(0), 3));
  CHECK_THROWS_AS(is_regular(f, q(0), 0), ValidationError);
}

TEST_CASE("the halving map has exactly two cells at depth four") {
  auto f = testutil::halving_map();
  auto cells = enumerate_itineraries(f, 4);
  REQUIRE(cells.size() == 2);
  CHECK(cells[0].lo == q(-6));
  CHECK(cells[0].hi == q(1, 2));
  CHECK(cells[0].word.symbols == std::vector<int>{1, 1, 1, 1});
  CHECK(cells[1].lo == q(1, 2));
  CHECK(cells[1].hi == q(6));
  CHECK(cells[1].word.symbols == std::vector<int>{2, 2, 2, 2});
}

TEST_CASE("cells carry the itinerary of every interior point") {
  testutil::InstanceGen gen(60601);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = gen.make(2 + trial % 3);
    if (f.ifs().radius().sgn() == 0) continue;
    const int n = 3;
    auto cells = enumerate_itineraries(f, n);
    REQUIRE(!cells.empty());

    // cells tile the invariant interval
    auto [klo, khi] = f.ifs().attractor();
    CHECK(cells.front().lo == klo);
    CHECK(cells.back().hi == khi);
    for (std::size_t i = 0; i + 1 < cells.size(); ++i)
      CHECK(cells[i].hi == cells[i + 1].lo);

    Scalar three = q(3), seven = q(7);
    for (const auto& cell : cells) {
      for (const Scalar& x : {(cell.lo * q(2) + cell.hi) / three,
                              (cell.lo + cell.hi * q(6)) / seven}) {
        if (x.eq(cell.lo) || x.eq(cell.hi)) continue;
        CHECK(f.itinerary(x, n) == cell.word);
      }
    }
  }
}

TEST_CASE("enlarged word sets grow with grid refinement and match at zero width") {
  testutil::InstanceGen gen(31337);
  for (int trial = 0; trial < 6; ++trial) {
    auto f = gen.make(2 + trial % 2);
    const int n = 3;

    auto base = enlarged_itineraries(f, q(0), n, 5);
    std::set<ItineraryWord> cell_words;
    for (auto& c : enumerate_itineraries(f, n)) cell_words.insert(c.word);
    CHECK(std::set<ItineraryWord>(base.begin(), base.end()) == cell_words);

    Scalar eps = f.ifs().radius() / q(100);
    auto coarse = enlarged_itineraries(f, eps, n, 5);
    auto fine = enlarged_itineraries(f, eps, n, 9);  // grid contains the coarse one
    std::set<ItineraryWord> fine_set(fine.begin(), fine.end());
    for (const auto& w : coarse) CHECK(fine_set.count(w) == 1);
    CHECK(std::is_sorted(coarse.begin(), coarse.end()));
  }
}

TEST_CASE("singular connection witness on the colliding map") {
  auto f = colliding_map();
  auto w = find_singular_connection(f.ifs(), f.breaks(), 4);
  REQUIRE(w.has_value());
  CHECK(w->word.symbols == std::vector<int>{1});
  CHECK(w->source_index == 1);
  CHECK(w->target_index == 1);
  CHECK(w->value == q(1, 2));
}

TEST_CASE("the halving map has no singular connection up to depth twelve") {
  auto f = testutil::halving_map();
  CHECK_FALSE(find_singular_connection(f.ifs(), f.breaks(), 12).has_value());
}

TEST_CASE("cell counts are monotone and at most k^n") {
  testutil::InstanceGen gen(112358);
  for (int trial = 0; trial < 12; ++trial) {
    int k = 2 + trial % 3;
    auto f = gen.make(k);
    auto gt = growth_table(f, 5, q(0), 1);
    REQUIRE(gt.rows.size() == 5);
    long prev = 1, cap = 1;
    for (const auto& row : gt.rows) {
      cap *= k;
      CHECK(row.count >= prev);
      CHECK(row.count <= cap);
      CHECK(row.enlarged_count == row.count);  // epsilon = 0
      prev = row.count;
    }
  }
}

TEST_CASE("enlarged counts dominate the base counts") {
  testutil::InstanceGen gen(271828);
  for (int trial = 0; trial < 5; ++trial) {
    auto f = gen.make(2);
    Scalar eps = f.ifs().radius() / q(50);
    auto gt = growth_table(f, 4, eps, 5);
    for (const auto& row : gt.rows) {
      CHECK(row.enlarged_count >= row.count);
      if (row.enlarged_count > 0)
        CHECK(row.log_rate ==
              doctest::Approx(std::log(double(row.enlarged_count)) / row.depth));
    }
  }
}

TEST_CASE("doubling report for the off-center halving map") {
  // Break 1/4: even denominator, so no composition can return the breakpoint
  // to itself (that would need 2^n = 1 mod 4) and the guard stays quiet.
  auto f = testutil::halving_map(1, 4);
  auto rep = check_doubling(f, q(0), 2.0, 8, 1, 8);
  CHECK(rep.m == 1);
  CHECK(rep.singular_guard_ok);
  CHECK_FALSE(rep.tau_finite);  // one breakpoint and no deeper preimages
  CHECK(rep.n0_found);
  CHECK(rep.n0 == 0);
  CHECK(rep.holds);
  CHECK(rep.growth_constant == 1.0);
  REQUIRE(rep.alpha.size() == 8);
  for (long a : rep.alpha) CHECK(a == 2);
}

TEST_CASE("doubling guard trips on a singular connection") {
  auto rep = check_doubling(colliding_map(), q(0), 2.0, 4, 1, 4);
  CHECK_FALSE(rep.singular_guard_ok);
  CHECK_FALSE(rep.holds);
}

TEST_CASE("rho above two forces window one; rho near one widens it") {
  auto f = testutil::halving_map(1, 4);
  CHECK(check_doubling(f, q(0), 4.0, 4, 1, 4).m == 1);
  CHECK(check_doubling(f, q(0), 1.26, 4, 1, 4).m == 3);  // 1.26^3 barely tops 2
  CHECK_THROWS_AS(check_doubling(f, q(0), 1.0, 4, 1, 4), ValidationError);
}
