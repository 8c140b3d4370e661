#include "pmedian/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pmedian {

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::euclidean: return "euclidean";
    case Metric::manhattan: return "manhattan";
    case Metric::squared_euclidean: return "squared_euclidean";
  }
  return "unknown";
}

Metric parse_metric(std::string_view name) {
  if (name == "euclidean" || name == "l2") return Metric::euclidean;
  if (name == "manhattan" || name == "l1") return Metric::manhattan;
  if (name == "squared_euclidean" || name == "sq") return Metric::squared_euclidean;
  throw std::invalid_argument("unknown metric: " + std::string(name));
}

bool improves(double candidate, double incumbent) {
  return candidate < incumbent - kImprovementTolerance * std::abs(incumbent);
}

Instance::Instance(std::vector<Point> points, std::vector<double> weights, std::string id)
    : points_(std::move(points)), weights_(std::move(weights)), id_(std::move(id)) {
  if (points_.empty()) throw std::invalid_argument("instance needs at least one demand point");
  if (weights_.size() != points_.size())
    throw std::invalid_argument("instance weights and points differ in length");
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("weights must be positive");
  }
  double lo_x = points_[0].x, hi_x = points_[0].x, lo_y = points_[0].y, hi_y = points_[0].y;
  for (const Point& a : points_) {
    if (!std::isfinite(a.x) || !std::isfinite(a.y))
      throw std::invalid_argument("coordinates must be finite");
    lo_x = std::min(lo_x, a.x);
    hi_x = std::max(hi_x, a.x);
    lo_y = std::min(lo_y, a.y);
    hi_y = std::max(hi_y, a.y);
  }
  scale_ = std::max(hi_x - lo_x, hi_y - lo_y);
}

Instance::Instance(std::vector<Point> points, std::string id)
    : Instance(std::vector<Point>(points), std::vector<double>(points.size(), 1.0), std::move(id)) {}

double distance(Metric metric, const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  switch (metric) {
    case Metric::euclidean: return std::sqrt(dx * dx + dy * dy);
    case Metric::manhattan: return std::abs(dx) + std::abs(dy);
    case Metric::squared_euclidean: return dx * dx + dy * dy;
  }
  return 0.0;
}

std::vector<std::size_t> allocate(const Instance& instance, std::span<const Point> facilities,
                                  Metric metric) {
  if (facilities.empty()) throw std::invalid_argument("allocate needs at least one facility");
  std::vector<std::size_t> assignment(instance.size());
  for (std::size_t j = 0; j < instance.size(); ++j) {
    const Point& a = instance.point(j);
    std::size_t best = 0;
    double best_d = distance(metric, facilities[0], a);
    for (std::size_t i = 1; i < facilities.size(); ++i) {
      const double d = distance(metric, facilities[i], a);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    assignment[j] = best;
  }
  return assignment;
}

double objective(const Instance& instance, std::span<const Point> facilities, Metric metric) {
  if (facilities.empty()) throw std::invalid_argument("objective needs at least one facility");
  double total = 0.0;
  for (std::size_t j = 0; j < instance.size(); ++j) {
    const Point& a = instance.point(j);
    double best = std::numeric_limits<double>::infinity();
    for (const Point& x : facilities) best = std::min(best, distance(metric, x, a));
    total += instance.weight(j) * best;
  }
  return total;
}

double assignment_cost(const Instance& instance, std::span<const Point> facilities,
                       std::span<const std::size_t> assignment, Metric metric) {
  double total = 0.0;
  for (std::size_t j = 0; j < instance.size(); ++j)
    total += instance.weight(j) * distance(metric, facilities[assignment[j]], instance.point(j));
  return total;
}

std::vector<std::vector<std::size_t>> clusters_of(std::span<const std::size_t> assignment,
                                                  std::size_t p) {
  std::vector<std::vector<std::size_t>> clusters(p);
  for (std::size_t j = 0; j < assignment.size(); ++j) clusters[assignment[j]].push_back(j);
  return clusters;
}

std::vector<Point> sites_of(const Instance& instance, std::span<const std::size_t> indices) {
  std::vector<Point> sites;
  sites.reserve(indices.size());
  for (std::size_t k : indices) sites.push_back(instance.point(k));
  return sites;
}

double selection_objective(const Instance& instance, std::span<const std::size_t> indices,
                           Metric metric) {
  if (indices.empty()) throw std::invalid_argument("selection must be nonempty");
  double total = 0.0;
  for (std::size_t j = 0; j < instance.size(); ++j) {
    const Point& a = instance.point(j);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k : indices) best = std::min(best, distance(metric, instance.point(k), a));
    total += instance.weight(j) * best;
  }
  return total;
}

DiscreteSelection make_selection(const Instance& instance, std::vector<std::size_t> indices,
                                 Metric metric) {
  if (indices.empty() || indices.size() > instance.size())
    throw std::invalid_argument("selection size must be in [1, n]");
  std::vector<char> seen(instance.size(), 0);
  for (std::size_t k : indices) {
    if (k >= instance.size()) throw std::out_of_range("selection index out of range");
    if (seen[k]) throw std::invalid_argument("selection indices must be distinct");
    seen[k] = 1;
  }
  const double value = selection_objective(instance, indices, metric);
  return {std::move(indices), value};
}

}  // namespace pmedian
