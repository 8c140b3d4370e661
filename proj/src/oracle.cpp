#include "pmedian/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "pmedian/weber.hpp"

namespace pmedian {
namespace {

double binomial(std::size_t n, std::size_t k) {
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return c;
}

class PartitionSearch {
 public:
  PartitionSearch(const Instance& instance, std::size_t p, Metric metric)
      : instance_(instance), p_(p), metric_(metric), labels_(instance.size(), 0),
        block_cost_(std::size_t{1} << instance.size(), std::numeric_limits<double>::quiet_NaN()),
        masks_(p, 0) {}

  Solution run() {
    descend(0, 0);
    Solution best;
    best.assignment = best_labels_;
    best.facilities.resize(p_);
    const auto clusters = clusters_of(best.assignment, p_);
    for (std::size_t i = 0; i < p_; ++i) {
      const auto pts = members(clusters[i]);
      best.facilities[i] = one_median(pts.first, pts.second, metric_).location;
    }
    best.objective = assignment_cost(instance_, best.facilities, best.assignment, metric_);
    return best;
  }

 private:
  std::pair<std::vector<Point>, std::vector<double>> members(std::span<const std::size_t> idx) const {
    std::pair<std::vector<Point>, std::vector<double>> out;
    for (std::size_t j : idx) {
      out.first.push_back(instance_.point(j));
      out.second.push_back(instance_.weight(j));
    }
    return out;
  }

  double cost(std::uint32_t mask) {
    double& cached = block_cost_[mask];
    if (std::isnan(cached)) {
      std::vector<std::size_t> idx;
      for (std::size_t j = 0; j < instance_.size(); ++j)
        if (mask & (1u << j)) idx.push_back(j);
      const auto pts = members(idx);
      cached = one_median(pts.first, pts.second, metric_).value;
    }
    return cached;
  }

  void descend(std::size_t j, std::size_t blocks) {
    const std::size_t n = instance_.size();
    if (n - j < p_ - blocks) return;  // cannot fill the remaining blocks
    if (j == n) {
      double total = 0.0;
      for (std::size_t b = 0; b < p_; ++b) total += cost(masks_[b]);
      if (total < best_value_) {
        best_value_ = total;
        best_labels_ = labels_;
      }
      return;
    }
    const std::size_t limit = std::min(blocks + 1, p_);
    for (std::size_t b = 0; b < limit; ++b) {
      labels_[j] = b;
      masks_[b] |= (1u << j);
      descend(j + 1, std::max(blocks, b + 1));
      masks_[b] &= ~(1u << j);
    }
  }

  const Instance& instance_;
  std::size_t p_;
  Metric metric_;
  std::vector<std::size_t> labels_;
  std::vector<double> block_cost_;
  std::vector<std::uint32_t> masks_;
  std::vector<std::size_t> best_labels_;
  double best_value_ = std::numeric_limits<double>::infinity();
};

using Clustering = std::vector<std::string>;

Clustering parse_pattern(const std::string& pattern) {
  Clustering out(1);
  for (char c : pattern) {
    if (c == '|') {
      out.emplace_back();
    } else {
      if (c < 'A' || c > 'H') throw std::invalid_argument("rectangle pattern letters are A..H");
      out.back().push_back(c);
    }
  }
  return out;
}

Clustering canonical(Clustering clusters) {
  for (auto& c : clusters) std::sort(c.begin(), c.end());
  std::sort(clusters.begin(), clusters.end());
  return clusters;
}

}  // namespace

DiscreteSelection brute_discrete(const Instance& instance, std::size_t p, Metric metric) {
  const std::size_t n = instance.size();
  if (p == 0 || p > n) throw std::invalid_argument("p must lie in [1, n]");
  if (binomial(n, p) > kBruteForceLimit)
    throw std::invalid_argument("brute_discrete: C(n, p) exceeds the enumeration limit");

  std::vector<std::size_t> combo(p);
  for (std::size_t i = 0; i < p; ++i) combo[i] = i;
  DiscreteSelection best{combo, std::numeric_limits<double>::infinity()};
  for (;;) {
    const double value = selection_objective(instance, combo, metric);
    if (value < best.objective) best = {combo, value};
    std::size_t i = p;
    while (i > 0 && combo[i - 1] == n - p + (i - 1)) --i;
    if (i == 0) break;
    ++combo[i - 1];
    for (std::size_t k = i; k < p; ++k) combo[k] = combo[k - 1] + 1;
  }
  return best;
}

Solution brute_partition(const Instance& instance, std::size_t p, Metric metric) {
  const std::size_t n = instance.size();
  if (p == 0 || p > n) throw std::invalid_argument("p must lie in [1, n]");
  if (std::pow(static_cast<double>(p), static_cast<double>(n)) > kBruteForceLimit || n > 30)
    throw std::invalid_argument("brute_partition: p^n exceeds the enumeration limit");
  if (p == 1) {
    Solution s;
    s.assignment.assign(n, 0);
    s.facilities = {one_median(instance.points(), instance.weights(), metric).location};
    s.objective = assignment_cost(instance, s.facilities, s.assignment, metric);
    return s;
  }
  return PartitionSearch(instance, p, metric).run();
}

Instance rectangle_instance(double a) {
  return Instance({{0.0, 0.0}, {a, 0.0}, {0.0, 1.0}, {a, 1.0}}, "rectangle");
}

Instance two_rectangle_instance(double x) {
  const double w = 1.6;
  return Instance({{0.0, 0.0},
                   {w, 0.0},
                   {w + x, 0.0},
                   {2 * w + x, 0.0},
                   {0.0, 1.0},
                   {w, 1.0},
                   {w + x, 1.0},
                   {2 * w + x, 1.0}},
                  "two-rectangles");
}

RectangleTableEntry two_rectangle_table(double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("rectangle gap must be nonnegative");
  const std::array<std::pair<const char*, double>, 4> rows{{
      {"ABEF|CDGH", 10.4},
      {"ABE|FCDGH", 7.8 + x},
      {"AE|BFCDGH", 7.2 + 2 * x},
      {"ABCD|EFGH", 6.4 + 4 * x},
  }};
  double best = std::numeric_limits<double>::infinity();
  for (const auto& row : rows) best = std::min(best, row.second);
  RectangleTableEntry entry{{}, best};
  for (const auto& row : rows)
    if (row.second <= best + 1e-9) entry.patterns.emplace_back(row.first);
  return entry;
}

std::string rectangle_pattern(std::span<const std::size_t> assignment) {
  if (assignment.size() != 8) throw std::invalid_argument("rectangle pattern needs 8 labels");
  std::size_t p = 0;
  for (std::size_t a : assignment) p = std::max(p, a + 1);
  Clustering clusters(p);
  for (std::size_t j = 0; j < 8; ++j) clusters[assignment[j]].push_back(static_cast<char>('A' + j));
  std::erase_if(clusters, [](const std::string& c) { return c.empty(); });
  clusters = canonical(std::move(clusters));
  std::string out;
  for (const auto& c : clusters) out += (out.empty() ? "" : "|") + c;
  return out;
}

bool same_rectangle_pattern(const std::string& a, const std::string& b) {
  const Clustering target = canonical(parse_pattern(b));
  const auto mirror_lr = [](char c) {
    const int i = c - 'A';
    return static_cast<char>('A' + (i < 4 ? 3 - i : 11 - i));
  };
  const auto mirror_tb = [](char c) {
    const int i = c - 'A';
    return static_cast<char>('A' + (i < 4 ? i + 4 : i - 4));
  };
  for (int s = 0; s < 4; ++s) {
    Clustering image = parse_pattern(a);
    for (auto& cluster : image) {
      for (char& c : cluster) {
        if (s & 1) c = mirror_lr(c);
        if (s & 2) c = mirror_tb(c);
      }
    }
    if (canonical(std::move(image)) == target) return true;
  }
  return false;
}

double squared_euclidean_flip(double lo, double hi, double tolerance) {
  const auto split_by_rectangle = [](double x) {
    const Solution s = brute_partition(two_rectangle_instance(x), 2, Metric::squared_euclidean);
    return same_rectangle_pattern(rectangle_pattern(s.assignment), "ABEF|CDGH");
  };
  if (split_by_rectangle(lo) || !split_by_rectangle(hi))
    throw std::invalid_argument("flip point is not bracketed by [lo, hi]");
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    (split_by_rectangle(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace pmedian
