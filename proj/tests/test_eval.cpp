#include <doctest.h>

#include <random>
#include <sstream>

#include "rgg/eval.hpp"

using namespace rgg;

namespace {

std::vector<LocalCoord> random_points(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> d(0.0, 400.0);
  std::vector<LocalCoord> pts(n);
  for (auto& p : pts) p = LocalCoord{d(rng), d(rng)};
  return pts;
}

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("match: identical sets pair up completely") {
  const std::vector<LocalCoord> pts{{0, 0}, {50, 0}, {100, 100}};
  const Matching m = match(pts, pts, 10.0);
  CHECK(m.tp() == 3);
  CHECK(m.fp() == 0);
  CHECK(m.fn() == 0);
  for (const auto& pair : m.pairs) CHECK(pair.distance == doctest::Approx(0.0));
}

TEST_CASE("match: hand-enumerated half-precision example") {
  const std::vector<LocalCoord> predicted{{0, 0}, {100, 0}};
  const std::vector<LocalCoord> actual{{2, 0}};
  const Matching m = match(predicted, actual, 10.0);
  CHECK(m.tp() == 1);
  CHECK(m.fp() == 1);
  CHECK(m.fn() == 0);
  const PrPoint p = pr_point(m, 10.0);
  CHECK(p.precision == doctest::Approx(0.5));
  CHECK(p.recall == doctest::Approx(1.0));
}

TEST_CASE("match: no predictions flags precision undefined") {
  const Matching m = match({}, {{0, 0}, {9, 9}, {20, 20}}, 10.0);
  const PrPoint p = pr_point(m, 10.0);
  CHECK(p.precision == 0.0);
  CHECK_FALSE(p.precision_defined);
  CHECK(p.recall == 0.0);
  CHECK(p.fn == 3);
}

TEST_CASE("match: one-to-one, all pairs within tolerance") {
  std::mt19937_64 rng(101);
  for (int round = 0; round < 40; ++round) {
    const auto pred = random_points(rng, 25);
    const auto act = random_points(rng, 20);
    const Matching m = match(pred, act, 35.0);
    std::vector<char> pu(pred.size(), 0), au(act.size(), 0);
    for (const auto& pair : m.pairs) {
      CHECK(pair.distance <= 35.0);
      CHECK(!pu[pair.predicted]);
      CHECK(!au[pair.actual]);
      pu[pair.predicted] = au[pair.actual] = 1;
    }
    CHECK(m.tp() + m.fn() == act.size());
    CHECK(m.tp() + m.fp() == pred.size());
  }
}

TEST_CASE("match: swapping sides swaps fp and fn, tp unchanged") {
  std::mt19937_64 rng(103);
  for (int round = 0; round < 40; ++round) {
    const auto a = random_points(rng, 18);
    const auto b = random_points(rng, 23);
    const Matching ab = match(a, b, 30.0);
    const Matching ba = match(b, a, 30.0);
    CHECK(ab.tp() == ba.tp());
    CHECK(ab.fp() == ba.fn());
    CHECK(ab.fn() == ba.fp());
  }
}

TEST_CASE("pr_curve: perfect detector is flat at one") {
  const std::vector<LocalCoord> pts{{0, 0}, {50, 50}};
  const auto curve = pr_curve(pts, pts, {10, 20, 30});
  REQUIRE(curve.size() == 3);
  for (const auto& p : curve) {
    CHECK(p.precision == doctest::Approx(1.0));
    CHECK(p.recall == doctest::Approx(1.0));
  }
}

TEST_CASE("pr_curve: tolerance zero with disjoint sets scores zero") {
  const auto curve = pr_curve({{1, 0}}, {{0, 0}}, {0.0});
  REQUIRE(curve.size() == 1);
  CHECK(curve[0].precision == 0.0);
  CHECK(curve[0].recall == 0.0);
}

TEST_CASE("pr_curve: precision and recall are non-decreasing in tolerance") {
  std::mt19937_64 rng(107);
  const std::vector<double> tolerances{5, 10, 15, 20, 30, 40, 60, 90};
  for (int round = 0; round < 30; ++round) {
    const auto pred = random_points(rng, 30);
    const auto act = random_points(rng, 25);
    const auto curve = pr_curve(pred, act, tolerances);
    for (std::size_t i = 1; i < curve.size(); ++i) {
      CHECK(curve[i].precision >= curve[i - 1].precision - 1e-12);
      CHECK(curve[i].recall >= curve[i - 1].recall - 1e-12);
    }
  }
}

TEST_CASE("hungarian strategy never matches fewer pairs than greedy") {
  std::mt19937_64 rng(109);
  for (int round = 0; round < 30; ++round) {
    const auto pred = random_points(rng, 12);
    const auto act = random_points(rng, 12);
    const Matching g = match(pred, act, 60.0, MatchStrategy::kGreedy);
    const Matching h = match(pred, act, 60.0, MatchStrategy::kHungarian);
    CHECK(h.tp() >= g.tp());
    for (const auto& pair : h.pairs) CHECK(pair.distance <= 60.0);
  }
}

TEST_CASE("hungarian resolves the classic greedy trap") {
  // Greedy grabs (p0, a0) at distance 1 and strands p1, whose only
  // in-tolerance partner was a0. The optimal assignment matches both.
  const std::vector<LocalCoord> pred{{0, 0}, {-9, 0}};
  const std::vector<LocalCoord> act{{1, 0}, {9, 0}};
  const Matching g = match(pred, act, 10.0, MatchStrategy::kGreedy);
  const Matching h = match(pred, act, 10.0, MatchStrategy::kHungarian);
  CHECK(g.tp() == 1);
  CHECK(h.tp() == 2);
}

TEST_CASE("csv output carries the documented header") {
  std::ostringstream out;
  write_pr_csv(out, pr_curve({{0, 0}}, {{1, 0}}, {10, 20}));
  CHECK(out.str().rfind("tolerance_m,precision,recall,tp,fp,fn\n", 0) == 0);
}

TEST_CASE("polygon filter keeps interior points only") {
  const std::vector<LocalCoord> square{{0, 0}, {100, 0}, {100, 100}, {0, 100}};
  const auto kept = filter_in_polygon({{50, 50}, {150, 50}, {-1, 3}}, square);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].x == 50.0);
}

}  // TEST_SUITE
