#include "pmedian/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pmedian/cooper.hpp"
#include "pmedian/instances.hpp"
#include "pmedian/oracle.hpp"
#include "pmedian/rng.hpp"
#include "pmedian/starts.hpp"
#include "pmedian/weber.hpp"

namespace pmedian {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::alt: return "ALT";
    case Algorithm::ialt: return "IALT";
    case Algorithm::ratio: return "RATIO";
  }
  return "?";
}

std::string_view to_string(StartMethod start) {
  switch (start) {
    case StartMethod::rand: return "RAND";
    case StartMethod::cons: return "CONS";
    case StartMethod::desc: return "DESC";
    case StartMethod::comb: return "COMB";
  }
  return "?";
}

std::string_view to_string(DescentVariant descent) {
  return descent == DescentVariant::best_improvement ? "3a" : "3b";
}

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

Algorithm parse_algorithm(std::string_view name) {
  const std::string u = upper(name);
  if (u == "ALT") return Algorithm::alt;
  if (u == "IALT" || u == "DIFF") return Algorithm::ialt;
  if (u == "RATIO") return Algorithm::ratio;
  throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

StartMethod parse_start(std::string_view name) {
  const std::string u = upper(name);
  if (u == "RAND") return StartMethod::rand;
  if (u == "CONS") return StartMethod::cons;
  if (u == "DESC") return StartMethod::desc;
  if (u == "COMB") return StartMethod::comb;
  throw std::invalid_argument("unknown start method: " + std::string(name));
}

DescentVariant parse_descent(std::string_view name) {
  const std::string u = upper(name);
  if (u == "3A" || u == "A") return DescentVariant::best_improvement;
  if (u == "3B" || u == "B") return DescentVariant::first_improvement;
  throw std::invalid_argument("unknown descent variant: " + std::string(name));
}

std::uint64_t child_seed(std::uint64_t master, std::size_t replication) {
  return mix64(mix64(master) + replication);
}

Instance load_instance(const RunConfig& config) {
  if (!config.file.empty()) return load_tsplib(config.file);
  return generate_instance(config.generated_n);
}

Solution run_replication(const Instance& instance, const RunConfig& config, std::uint64_t seed) {
  Rng rng(seed);
  const auto descend = [&](const DiscreteSelection& from) {
    if (config.descent == DescentVariant::best_improvement) return desc_3a(instance, from);
    return desc_3b(instance, from, rng);
  };

  DiscreteSelection start;
  switch (config.start) {
    case StartMethod::rand: start = rand_start(instance, config.p, rng); break;
    case StartMethod::cons: start = cons_start(instance, config.p, rng); break;
    case StartMethod::desc: start = descend(rand_start(instance, config.p, rng)); break;
    case StartMethod::comb: start = descend(cons_start(instance, config.p, rng)); break;
  }
  const std::vector<Point> sites = sites_of(instance, start.indices);

  switch (config.algorithm) {
    case Algorithm::alt: return run_alt(instance, sites);
    case Algorithm::ialt: return run_ialt(instance, sites, SelectionRule::diff, config.transfer_limit);
    case Algorithm::ratio: break;
  }
  return run_ialt(instance, sites, SelectionRule::ratio, config.transfer_limit);
}

RunReport run_experiment(const RunConfig& config) { return run_experiment(load_instance(config), config); }

RunReport run_experiment(const Instance& instance, const RunConfig& config) {
  if (config.replications == 0) throw std::invalid_argument("replications must be at least 1");
  if (config.p == 0 || config.p > instance.size())
    throw std::invalid_argument("p must lie in [1, n]");

  using clock = std::chrono::steady_clock;
  const auto started = clock::now();
  const std::size_t reps = config.replications;
  RunReport report;
  report.instance_id = instance.id();
  report.n = instance.size();
  report.config = config;
  report.objectives.assign(reps, 0.0);
  report.seconds.assign(reps, 0.0);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  const auto worker = [&] {
    for (std::size_t r = next++; r < reps && !failed; r = next++) {
      try {
        const auto t0 = clock::now();
        report.objectives[r] = run_replication(instance, config, child_seed(config.seed, r)).objective;
        report.seconds[r] = std::chrono::duration<double>(clock::now() - t0).count();
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(config.threads, 1, reps);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  report.best = *std::min_element(report.objectives.begin(), report.objectives.end());
  double sum = 0.0;
  for (double v : report.objectives) sum += v;
  report.average = sum / static_cast<double>(reps);

  // Loaded files are only compared against the n = 3038 rows.
  if (config.file.empty() || instance.size() == 3038)
    report.best_known = best_known(instance.size(), config.p);
  if (report.best_known) {
    const double bk = *report.best_known;
    report.pct_best_above = 100.0 * (report.best - bk) / bk;
    report.pct_avg_above = 100.0 * (report.average - bk) / bk;
    for (double v : report.objectives)
      if (v <= bk * (1.0 + kBestKnownHitTolerance)) ++report.hits;
  }
  report.total_seconds = std::chrono::duration<double>(clock::now() - started).count();
  return report;
}

namespace {

std::string shortest(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

std::string optional_field(const std::optional<double>& v) { return v ? shortest(*v) : std::string(); }

}  // namespace

void write_csv_header(std::ostream& out) {
  out << "n,p,algorithm,start,reps,seed,best_obj,avg_obj,pct_best_above_bk,pct_avg_above_bk,"
         "hits_best_known,total_seconds\n";
}

void write_csv_row(std::ostream& out, const RunReport& r) {
  out << r.n << ',' << r.config.p << ',' << to_string(r.config.algorithm) << ','
      << to_string(r.config.start) << ',' << r.config.replications << ',' << r.config.seed << ','
      << shortest(r.best) << ',' << shortest(r.average) << ',' << optional_field(r.pct_best_above)
      << ',' << optional_field(r.pct_avg_above) << ',' << r.hits << ','
      << shortest(r.total_seconds) << '\n';
}

void write_summary(std::ostream& out, const RunReport& r) {
  std::ostringstream line;
  line << std::fixed << std::setprecision(4);
  line << r.instance_id << " n=" << r.n << " p=" << r.config.p << ' '
       << to_string(r.config.algorithm) << '/' << to_string(r.config.start)
       << " reps=" << r.config.replications << " best=" << r.best << " avg=" << r.average;
  line << std::setprecision(2);
  if (r.pct_best_above) {
    line << " best+" << *r.pct_best_above << "% avg+" << *r.pct_avg_above << "% hits=" << r.hits;
  }
  line << " time=" << r.total_seconds << "s";
  out << line.str() << '\n';
}

namespace {

std::string fmt(double v, int digits = 10) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

double angle_between(const Point& o, const Point& a, const Point& b) {
  const double ux = a.x - o.x, uy = a.y - o.y, vx = b.x - o.x, vy = b.y - o.y;
  return std::acos(std::clamp((ux * vx + uy * vy) / (std::hypot(ux, uy) * std::hypot(vx, vy)), -1.0, 1.0));
}

}  // namespace

std::vector<CheckResult> verify_examples(double triangle_tolerance) {
  std::vector<CheckResult> out;
  const double root3 = std::sqrt(3.0);
  const std::vector<double> unit3(3, 1.0);

  {
    const std::vector<Point> tri{{0, 0}, {1, 0}, {0, 1}};
    const WeberResult w = weiszfeld(tri, unit3, centroid(tri, unit3).location);
    const double expected = std::sqrt(2.0 + root3);
    const double gap = std::abs(w.value - expected);
    out.push_back({"triangle a=1 objective sqrt(2+sqrt3)", gap <= triangle_tolerance,
                   "weiszfeld=" + fmt(w.value) + " closed form=" + fmt(expected)});

    double worst = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double angle = angle_between(w.location, tri[k], tri[(k + 1) % 3]);
      worst = std::max(worst, std::abs(angle - 2.0 * std::numbers::pi / 3.0));
    }
    out.push_back({"triangle a=1 vertex directions at 120 degrees", worst <= 1e-4,
                   "max deviation " + fmt(worst, 3) + " rad"});
  }
  for (double a : {1.05, 1.2, 2.0}) {
    const std::vector<Point> tri{{0, 0}, {a, 0}, {0, 1}};
    const WeberResult w = weiszfeld(tri, unit3, centroid(tri, unit3).location);
    const TriangleOptimum t = triangle_analytic(a);
    const double theta = std::atan2(w.location.y, w.location.x);
    const bool ok = std::abs(w.value - t.value) <= 1e-8 && std::abs(theta - t.theta) <= 1e-6;
    out.push_back({"triangle a=" + fmt(a, 3) + " closed form vs weiszfeld", ok,
                   "value " + fmt(w.value) + " vs " + fmt(t.value) + ", theta " + fmt(theta) +
                       " vs " + fmt(t.theta)});
  }

  {
    const double threshold = root3 / 2.0 * (std::sqrt(5.0) - 1.0);
    const double at = triangle_analytic(threshold).value;
    out.push_back({"3-1 threshold (sqrt3/2)(sqrt5-1) gives objective 2", std::abs(at - 2.0) <= 1e-12,
                   "threshold=" + fmt(threshold) + " objective=" + fmt(at, 15)});
    for (double a : {1.06, 1.08}) {
      const Solution s = brute_partition(rectangle_instance(a), 2);
      std::vector<std::size_t> sizes(2, 0);
      for (std::size_t i : s.assignment) ++sizes[i];
      const bool three_one = std::max(sizes[0], sizes[1]) == 3;
      const bool ok = (a < threshold) == three_one;
      out.push_back({"rectangle a=" + fmt(a, 3) + " optimal clusters " + (a < threshold ? "3-1" : "2-2"),
                     ok, "objective=" + fmt(s.objective)});
    }
  }

  for (double a : {1.0, 1.05, 1.2, 2.0}) {
    const Instance rect = rectangle_instance(a);
    const double optimum = brute_partition(rect, 2).objective;
    double worst = 0.0;
    for (SelectionRule rule : {SelectionRule::diff, SelectionRule::ratio}) {
      for (std::size_t u = 0; u < 4; ++u) {
        for (std::size_t v = u + 1; v < 4; ++v) {
          const std::vector<Point> start{rect.point(u), rect.point(v)};
          worst = std::max(worst, std::abs(run_ialt(rect, start, rule).objective - optimum));
        }
      }
    }
    out.push_back({"rectangle a=" + fmt(a, 3) + " IALT/RATIO from all vertex pairs reach optimum",
                   worst <= 1e-8, "optimum=" + fmt(optimum) + " max gap=" + fmt(worst, 3)});
  }

  {
    const Instance rect = rectangle_instance(1.2);
    int short_sides = 0, long_sides = 0;
    for (std::size_t u = 0; u < 4; ++u) {
      for (std::size_t v = u + 1; v < 4; ++v) {
        const std::vector<Point> start{rect.point(u), rect.point(v)};
        const Solution s = run_alt(rect, start);
        if (std::abs(s.objective - 2.0) <= 1e-9) ++short_sides;
        else if (std::abs(s.objective - 2.4) <= 1e-9) ++long_sides;
      }
    }
    out.push_back({"ALT terminals from vertex pairs, a=1.2 (short/long sides of 6)",
                   true,
                   std::to_string(short_sides) + " short, " + std::to_string(long_sides) + " long",
                   true});
  }

  for (double x : {0.1, 0.4, 0.5, 0.6, 1.0, 2.6, 3.0}) {
    const Solution s = brute_partition(two_rectangle_instance(x), 2, Metric::manhattan);
    const RectangleTableEntry entry = two_rectangle_table(x);
    const std::string found = rectangle_pattern(s.assignment);
    bool pattern_ok = false;
    for (const auto& pattern : entry.patterns) pattern_ok = pattern_ok || same_rectangle_pattern(found, pattern);
    const bool ok = pattern_ok && std::abs(s.objective - entry.objective) <= 1e-9;
    out.push_back({"manhattan two rectangles x=" + fmt(x, 3), ok,
                   found + " " + fmt(s.objective) + " vs table " + entry.patterns.front() + " " +
                       fmt(entry.objective)});
  }

  {
    const Solution apart = brute_partition(two_rectangle_instance(1.0), 2, Metric::squared_euclidean);
    out.push_back({"squared euclidean rectangles objective 7.12", std::abs(apart.objective - 7.12) <= 1e-9,
                   "objective=" + fmt(apart.objective)});
    const double x = 0.3;
    const Solution close = brute_partition(two_rectangle_instance(x), 2, Metric::squared_euclidean);
    const double expected = (4 * x * x + 6.4 * x + 16.24) / 3.0;
    out.push_back({"squared euclidean 6-2 objective at x=0.3", std::abs(close.objective - expected) <= 1e-9,
                   rectangle_pattern(close.assignment) + " " + fmt(close.objective) + " vs " + fmt(expected)});
    const double flip = squared_euclidean_flip();
    const double expected_flip = std::sqrt(1.92) - 0.8;
    out.push_back({"squared euclidean flip at sqrt(1.92)-0.8", std::abs(flip - expected_flip) <= 1e-5,
                   "bisection=" + fmt(flip) + " closed form=" + fmt(expected_flip)});
  }

  {
    const Instance square = rectangle_instance(1.0);
    Solution s;
    s.facilities = {{0.0, 0.5}, {1.0, 0.5}};
    s.assignment = allocate(square, s.facilities);
    s.objective = objective(square, s.facilities);
    const auto ratio = select_transfers(s, square, SelectionRule::ratio);
    bool ok = ratio.size() == 4;
    for (const auto& c : ratio) ok = ok && std::abs(c.score - std::sqrt(5.0)) <= 1e-12;
    out.push_back({"square ratio score sqrt(5)", ok,
                   ratio.empty() ? "no candidates" : "score=" + fmt(ratio.front().score)});
  }
  return out;
}

}  // namespace pmedian
