#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "pmedian/harness.hpp"
#include "pmedian/instances.hpp"
#include "pmedian/oracle.hpp"
#include "pmedian/starts.hpp"
#include "test_support.hpp"

using namespace pmedian;
using pmedian::testing::close_rel;
using pmedian::testing::random_instance;

namespace {

Instance collinear(std::size_t n) {
  std::vector<Point> pts;
  for (std::size_t k = 0; k < n; ++k) pts.push_back({double(k), 0});
  return Instance(pts);
}

bool is_swap_local_optimum(const Instance& inst, const DiscreteSelection& sel) {
  std::vector<char> taken(inst.size(), 0);
  for (std::size_t k : sel.indices) taken[k] = 1;
  for (std::size_t pos = 0; pos < sel.indices.size(); ++pos) {
    for (std::size_t k = 0; k < inst.size(); ++k) {
      if (taken[k]) continue;
      auto trial = sel.indices;
      trial[pos] = k;
      if (improves(selection_objective(inst, trial), sel.objective)) return false;
    }
  }
  return true;
}

using Step = std::tuple<std::size_t, std::size_t, bool>;

std::vector<Step> record_3b(const Instance& inst, const DiscreteSelection& start, std::uint64_t seed,
                            bool shortcut, bool skip, DiscreteSelection* result = nullptr) {
  std::vector<Step> steps;
  DescentOptions opt;
  opt.use_shortcut = shortcut;
  opt.skip_selected = skip;
  opt.observer = [&](const SwapEvaluation& e) { steps.emplace_back(e.position, e.inserted, e.accepted); };
  Rng rng(seed);
  const DiscreteSelection out = desc_3b(inst, start, rng, opt);
  if (result) *result = out;
  return steps;
}

}  // namespace

TEST_CASE("random start") {
  const Instance inst = generate_instance(50);
  Rng a(4), b(4);
  const DiscreteSelection s = rand_start(inst, 7, a);
  CHECK(s == rand_start(inst, 7, b));
  CHECK(std::set<std::size_t>(s.indices.begin(), s.indices.end()).size() == 7);
  CHECK(s.objective == doctest::Approx(selection_objective(inst, s.indices)));
  Rng c(1);
  const DiscreteSelection all = rand_start(inst, 50, c);
  CHECK(all.objective == 0.0);
  CHECK_THROWS_AS(rand_start(inst, 51, c), std::invalid_argument);
  CHECK_THROWS_AS(rand_start(inst, 0, c), std::invalid_argument);
  Rng d(8);
  const DiscreteSelection big = rand_start(generate_instance(1000), 25, d);
  CHECK(big.objective > 705.8626);
}

TEST_CASE("constructive start picks from the two most distant points") {
  // Gaps to {0, 9}: 1 2 3 4 4 3 2 1, so the tie 4/5 resolves to 4 first.
  const Instance line = collinear(10);
  int fours = 0, fives = 0;
  const int trials = 6000;
  for (int seed = 0; seed < trials; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed));
    const DiscreteSelection s = cons_complete(line, {0, 9}, 3, rng);
    REQUIRE(s.indices.size() == 3);
    if (s.indices[2] == 4) ++fours;
    else if (s.indices[2] == 5) ++fives;
  }
  CHECK(fours + fives == trials);
  CHECK(double(fours) / trials == doctest::Approx(2.0 / 3.0).epsilon(0.05));
}

TEST_CASE("constructive start replays the dispersion rule") {
  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    const Instance inst = random_instance(rng, 30 + rng.uniform_index(30));
    const std::size_t p = 2 + rng.uniform_index(8);
    const std::uint64_t seed = rng.next();
    Rng a(seed);
    const DiscreteSelection s = cons_start(inst, p, a);
    REQUIRE(s.indices.size() == p);
    for (std::size_t k = 2; k < p; ++k) {
      std::vector<double> gaps;
      double chosen = 0.0;
      for (std::size_t j = 0; j < inst.size(); ++j) {
        if (std::find(s.indices.begin(), s.indices.begin() + long(k), j) != s.indices.begin() + long(k)) continue;
        double g = std::numeric_limits<double>::infinity();
        for (std::size_t q = 0; q < k; ++q) g = std::min(g, distance(inst.point(j), inst.point(s.indices[q])));
        gaps.push_back(g);
        if (j == s.indices[k]) chosen = g;
      }
      std::sort(gaps.rbegin(), gaps.rend());
      CHECK((chosen == gaps[0] || chosen == gaps[1]));
    }
  }
  Rng one(3);
  CHECK(cons_start(collinear(5), 1, one).indices.size() == 1);
}

TEST_CASE("workspace bookkeeping") {
  Rng rng(21);
  const Instance inst = random_instance(rng, 40, true);
  Rng pick(5);
  SwapWorkspace ws(inst, rand_start(inst, 5, pick).indices, Metric::euclidean, false);
  CHECK(ws.objective() == doctest::Approx(selection_objective(inst, ws.selection())).epsilon(1e-12));
  for (std::size_t pos = 0; pos < 5; ++pos) {
    ws.remove(pos);
    for (std::size_t j = 0; j < inst.size(); ++j) CHECK(ws.without_removed()[j] >= ws.closest()[j]);
    for (std::size_t k = 0; k < inst.size(); ++k) {
      if (ws.is_selected(k)) continue;
      const double value = ws.evaluate_insert(k);
      auto trial = ws.selection();
      trial[pos] = k;
      CHECK(close_rel(value, selection_objective(inst, trial), 1e-12));
      for (std::size_t j = 0; j < inst.size(); ++j) CHECK(ws.with_inserted()[j] <= ws.without_removed()[j]);
    }
  }
  CHECK_THROWS(SwapWorkspace(inst, {}));
  CHECK_THROWS(SwapWorkspace(inst, {1, 1}));
  SwapWorkspace fresh(inst, {0, 1});
  CHECK_THROWS_AS(fresh.evaluate_insert(3), std::logic_error);
  CHECK_THROWS_AS(fresh.commit(), std::logic_error);
  fresh.remove(0);
  CHECK_THROWS_AS(fresh.evaluate_insert(1), std::invalid_argument);
}

TEST_CASE("short-cut costs equal direct costs for every evaluated swap") {
  Rng rng(31);
  for (int t = 0; t < 10; ++t) {
    const Instance inst = random_instance(rng, 40 + rng.uniform_index(40), t % 2 == 0);
    const std::size_t p = 2 + rng.uniform_index(6);
    Rng start_rng(rng.next());
    const DiscreteSelection start = rand_start(inst, p, start_rng);
    std::size_t checked = 0;
    DescentOptions opt;
    opt.observer = [&](const SwapEvaluation& e) {
      std::vector<std::size_t> trial(e.selection.begin(), e.selection.end());
      trial[e.position] = e.inserted;
      CHECK(close_rel(e.value, selection_objective(inst, trial), 1e-12));
      ++checked;
    };
    Rng d(rng.next());
    desc_3b(inst, start, d, opt);
    desc_3a(inst, start, opt);
    CHECK(checked > 0);
  }
}

TEST_CASE("short-cut and skip option do not change the descent") {
  Rng rng(41);
  for (int t = 0; t < 8; ++t) {
    const Instance inst = random_instance(rng, 30 + rng.uniform_index(40));
    const std::size_t p = 2 + rng.uniform_index(5);
    Rng start_rng(rng.next());
    const DiscreteSelection start = rand_start(inst, p, start_rng);
    const std::uint64_t seed = rng.next();
    DiscreteSelection a, b, c;
    const auto with = record_3b(inst, start, seed, true, true, &a);
    const auto without = record_3b(inst, start, seed, false, true, &b);
    const auto unskipped = record_3b(inst, start, seed, true, false, &c);
    CHECK(with == without);
    CHECK(with == unskipped);
    CHECK(a.indices == b.indices);
    CHECK(a.indices == c.indices);

    DescentOptions direct;
    direct.use_shortcut = false;
    CHECK(desc_3a(inst, start).indices == desc_3a(inst, start, direct).indices);
  }
}

TEST_CASE("descents end in 1-swap local optima") {
  Rng rng(51);
  for (int t = 0; t < 30; ++t) {
    const Instance inst = random_instance(rng, 8 + rng.uniform_index(23), t % 2 == 1);
    const std::size_t p = 1 + rng.uniform_index(5);
    Rng r(rng.next());
    const DiscreteSelection start = rand_start(inst, p, r);
    const DiscreteSelection a = desc_3a(inst, start);
    const DiscreteSelection b = desc_3b(inst, start, r);
    CHECK(is_swap_local_optimum(inst, a));
    CHECK(is_swap_local_optimum(inst, b));
    CHECK(a.objective <= start.objective);
    CHECK(b.objective <= start.objective);
    CHECK(a.objective >= brute_discrete(inst, p).objective * (1 - 1e-12));
  }
}

TEST_CASE("descent separates the two rectangles") {
  const Instance inst = two_rectangle_instance(3.0);
  const DiscreteSelection start = make_selection(inst, {0, 1});
  const DiscreteSelection a = desc_3a(inst, start);
  const std::size_t left = (a.indices[0] % 4 < 2) + (a.indices[1] % 4 < 2);
  CHECK(left == 1);
  CHECK(a.objective == doctest::Approx(brute_discrete(inst, 2).objective));
}

TEST_CASE("descent starts lead near the benchmark value") {
  // The discrete optimum itself sits above the continuous value; the band
  // applies once the continuous heuristic has run from the descent.
  const Instance inst = generate_instance(100);
  RunConfig config;
  config.p = 5;
  config.start = StartMethod::desc;
  config.algorithm = Algorithm::ratio;
  int close = 0;
  const int seeds = 50;
  for (int seed = 0; seed < seeds; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed));
    const DiscreteSelection s = desc_3b(inst, rand_start(inst, 5, rng), rng);
    CHECK(s.objective >= 164.6011 * (1 - 1e-9));
    const double value = run_replication(inst, config, static_cast<std::uint64_t>(seed)).objective;
    if (value <= 164.6011 * 1.015) ++close;
  }
  MESSAGE("within 1.5% on " << close << " of " << seeds << " seeds");
  CHECK(close >= 35);
}

TEST_CASE("combined start improves on its constructive start") {
  Rng rng(61);
  for (int t = 0; t < 20; ++t) {
    const Instance inst = random_instance(rng, 40 + rng.uniform_index(60));
    const std::size_t p = 2 + rng.uniform_index(8);
    const std::uint64_t seed = rng.next();
    Rng a(seed), b(seed);
    const DiscreteSelection cons = cons_start(inst, p, a);
    const DiscreteSelection comb = comb_start(inst, p, b);
    CHECK(comb.objective <= cons.objective);
    CHECK(is_swap_local_optimum(inst, comb));
  }
  Rng r(1);
  CHECK(comb_start(collinear(6), 6, r).objective == 0.0);
}
