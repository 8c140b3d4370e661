#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "pmedian/cooper.hpp"
#include "pmedian/oracle.hpp"
#include "pmedian/weber.hpp"
#include "test_support.hpp"

using namespace pmedian;
using pmedian::testing::non_increasing;
using pmedian::testing::random_instance;
using pmedian::testing::random_sites;

namespace {

// Terminal solution of the a x 1 rectangle with one facility per short side.
Solution short_side_terminal(const Instance& rect, double a) {
  const std::vector<Point> start{{0, 0}, {a, 0}};
  return run_alt(rect, start);
}

std::set<std::size_t> points_of(const std::vector<TransferCandidate>& list) {
  std::set<std::size_t> out;
  for (const TransferCandidate& c : list) out.insert(c.point);
  return out;
}

bool allocation_consistent(const Solution& s, const Instance& inst, Metric metric = Metric::euclidean) {
  const auto fresh = allocate(inst, s.facilities, metric);
  for (std::size_t j = 0; j < inst.size(); ++j) {
    const double mine = distance(metric, s.facilities[s.assignment[j]], inst.point(j));
    const double best = distance(metric, s.facilities[fresh[j]], inst.point(j));
    if (mine > best) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("square from two adjacent corners") {
  const Instance square = rectangle_instance(1.0);
  const Solution s = short_side_terminal(square, 1.0);
  CHECK(s.facilities == std::vector<Point>{{0, 0.5}, {1, 0.5}});
  CHECK(s.assignment == std::vector<std::size_t>{0, 1, 0, 1});
  CHECK(s.objective == doctest::Approx(2.0));
}

TEST_CASE("rectangle started on the long sides stops immediately") {
  const Instance rect = rectangle_instance(2.0);
  const std::vector<Point> start{{1, 0}, {1, 1}};
  const Solution s = run_alt(rect, start);
  CHECK(s.objective == doctest::Approx(4.0));
  CHECK(s.facilities == start);
  CHECK(s.diagnostics.iterations == 1);
}

TEST_CASE("single facility is one Weber problem") {
  Rng rng(2);
  const Instance inst = random_instance(rng, 40, true);
  const std::vector<Point> start{inst.point(0)};
  const Solution s = run_alt(inst, start);
  const WeberResult w = one_median(inst.points(), inst.weights());
  CHECK(s.objective == doctest::Approx(w.value).epsilon(1e-9));
  const Solution t = run_ialt(inst, start, SelectionRule::ratio);
  CHECK(t.objective == s.objective);
}

TEST_CASE("transfer scores on the square") {
  const Instance square = rectangle_instance(1.0);
  const Solution s = short_side_terminal(square, 1.0);
  const auto ratio = select_transfers(s, square, SelectionRule::ratio);
  const auto diff = select_transfers(s, square, SelectionRule::diff);
  REQUIRE(ratio.size() == 4);
  REQUIRE(diff.size() == 4);
  for (const TransferCandidate& c : ratio) CHECK(c.score == doctest::Approx(std::sqrt(5.0)));
  for (const TransferCandidate& c : diff) CHECK(c.score == doctest::Approx(std::sqrt(1.25) - 0.5));
  CHECK(points_of(ratio) == points_of(diff));
  // Equal scores are ordered by point index.
  for (std::size_t k = 0; k < 4; ++k) CHECK(ratio[k].point == k);
  CHECK(select_transfers(s, square, SelectionRule::ratio, 2).size() == 2);
  CHECK(select_transfers(s, square, SelectionRule::ratio, 0).empty());
}

TEST_CASE("ratio rule skips points sitting on their facility") {
  const Instance inst({{0, 0}, {10, 0}, {11, 0}});
  const std::vector<Point> start{{0, 0}, {10, 0}};
  const Solution s = run_alt(inst, start);
  CHECK(s.facilities[0] == Point{0, 0});
  const auto ratio = points_of(select_transfers(s, inst, SelectionRule::ratio));
  const auto diff = points_of(select_transfers(s, inst, SelectionRule::diff));
  CHECK(ratio.count(0) == 0);
  CHECK(diff.count(0) == 1);
}

TEST_CASE("transfer on the square is accepted") {
  const Instance square = rectangle_instance(1.0);
  Solution s = short_side_terminal(square, 1.0);
  const auto candidates = select_transfers(s, square, SelectionRule::ratio);
  REQUIRE(try_transfer(s, square, candidates[0]));
  CHECK(s.objective == doctest::Approx(std::sqrt(2.0 + std::sqrt(3.0))).epsilon(1e-9));
  CHECK(s.assignment[0] == candidates[0].second);
}

TEST_CASE("transfer on the 1.2 rectangle is rejected and leaves the solution untouched") {
  const double a = 1.2;
  const Instance rect = rectangle_instance(a);
  Solution s = short_side_terminal(rect, a);
  CHECK(s.objective == doctest::Approx(2.0));
  const Solution before = s;
  for (const TransferCandidate& c : select_transfers(s, rect, SelectionRule::ratio)) {
    CHECK_FALSE(try_transfer(s, rect, c));
    CHECK(s == before);
  }
  // The rejected 3-1 split would cost about 2.1257.
  CHECK(triangle_analytic(a).value == doctest::Approx(2.1257).epsilon(1e-4));
}

TEST_CASE("singleton source is never transferred") {
  const Instance inst({{0, 0}, {5, 0}, {6, 0}});
  Solution s{{{0, 0}, {5.5, 0}}, {0, 1, 1}, 1.0, {}};
  const Solution before = s;
  CHECK_FALSE(try_transfer(s, inst, {0, 0, 1, 0.0, 5.5, 0.0}));
  CHECK(s == before);
  CHECK_THROWS_AS(try_transfer(s, inst, {0, 1, 0, 0.0, 5.5, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(try_transfer(s, inst, {0, 0, 0, 0.0, 5.5, 0.0}), std::invalid_argument);
}

TEST_CASE("improved alternating method on rectangles") {
  const double a = 1.05;
  const std::vector<Point> corners{{0, 0}, {a, 0}};
  for (SelectionRule rule : {SelectionRule::diff, SelectionRule::ratio}) {
    const Solution s = run_ialt(rectangle_instance(a), corners, rule);
    CHECK(s.objective == doctest::Approx(std::sqrt(a * a + a * std::sqrt(3.0) + 1.0)).epsilon(1e-9));
    CHECK(s.diagnostics.transfers_accepted == 1);
    const std::vector<Point> wide{{0, 0}, {2, 0}};
    const Solution t = run_ialt(rectangle_instance(2.0), wide, rule);
    CHECK(t.objective == doctest::Approx(2.0));
    CHECK(t.diagnostics.transfers_accepted == 0);
  }
}

TEST_CASE("empty clusters are repaired") {
  std::vector<Point> line;
  for (int k = 0; k < 10; ++k) line.push_back({double(k), 0});
  const Instance inst(line);
  for (const std::vector<Point>& start : {std::vector<Point>{{0, 0}, {0, 0}},
                                          std::vector<Point>{{0, 0}, {100, 0}},
                                          std::vector<Point>{{4.5, 0}, {4.5, 0}, {4.5, 0}}}) {
    const Solution s = run_alt(inst, start);
    CHECK(s.diagnostics.degeneracy_repairs >= 1);
    for (const auto& cluster : clusters_of(s.assignment, s.p())) CHECK_FALSE(cluster.empty());
    CHECK(s.objective == doctest::Approx(objective(inst, s.facilities)).epsilon(1e-12));
    CHECK(s.objective < 25.0);
  }
}

TEST_CASE("start validation") {
  const Instance square = rectangle_instance(1.0);
  CHECK_THROWS_AS(run_alt(square, std::vector<Point>{}), std::invalid_argument);
}

TEST_CASE("random configurations: monotone, consistent, restorable") {
  Rng rng(101);
  for (int t = 0; t < 40; ++t) {
    const Instance inst = random_instance(rng, 10 + rng.uniform_index(60), t % 2 == 1);
    const std::size_t p = 2 + rng.uniform_index(6);
    const auto start = random_sites(rng, inst, p);
    const SelectionRule rule = t % 3 == 0 ? SelectionRule::diff : SelectionRule::ratio;

    const Solution alt = run_alt(inst, start);
    CHECK(non_increasing(alt.diagnostics.objective_trace));
    CHECK(allocation_consistent(alt, inst));
    CHECK(alt.objective == doctest::Approx(objective(inst, alt.facilities)).epsilon(1e-12));

    const Solution ialt = run_ialt(inst, start, rule);
    CHECK(non_increasing(ialt.diagnostics.objective_trace));
    CHECK(allocation_consistent(ialt, inst));
    CHECK(ialt.objective <= alt.objective * (1 + 1e-12));
    for (const auto& cluster : clusters_of(ialt.assignment, p)) CHECK_FALSE(cluster.empty());

    // At termination every listed transfer is rejected without side effects.
    for (const TransferCandidate& c : select_transfers(ialt, inst, rule)) {
      Solution copy = ialt;
      CHECK_FALSE(try_transfer(copy, inst, c));
      CHECK(copy == ialt);
    }
  }
}

TEST_CASE("other metrics route through their one-median solvers") {
  const Instance inst = two_rectangle_instance(3.0);
  const std::vector<Point> start{inst.point(0), inst.point(3)};
  const Solution l1 = run_ialt(inst, start, SelectionRule::ratio, 20, Metric::manhattan);
  CHECK(l1.objective == doctest::Approx(10.4));
  const Solution sq = run_ialt(inst, start, SelectionRule::ratio, 20, Metric::squared_euclidean);
  CHECK(sq.objective == doctest::Approx(7.12));
}
