#include "pmedian/weber.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pmedian {
namespace {

void check_cluster(std::span<const Point> points, std::span<const double> weights) {
  if (points.empty()) throw std::invalid_argument("cluster must be nonempty");
  if (points.size() != weights.size())
    throw std::invalid_argument("cluster weights and points differ in length");
}

double bounding_scale(std::span<const Point> points) {
  auto [lo_x, hi_x] = std::minmax_element(points.begin(), points.end(),
                                          [](const Point& a, const Point& b) { return a.x < b.x; });
  auto [lo_y, hi_y] = std::minmax_element(points.begin(), points.end(),
                                          [](const Point& a, const Point& b) { return a.y < b.y; });
  return std::max(hi_x->x - lo_x->x, hi_y->y - lo_y->y);
}

// Median interval midpoint of weighted scalars.
double weighted_median(std::vector<std::pair<double, double>> values) {
  std::sort(values.begin(), values.end());
  double total = 0.0;
  for (const auto& v : values) total += v.second;
  const double half = 0.5 * total;
  double cumulative = 0.0;
  std::size_t k = 0;
  while (k < values.size()) {
    const double v = values[k].first;
    while (k < values.size() && values[k].first == v) cumulative += values[k++].second;
    if (cumulative > half || k == values.size()) return v;
    if (cumulative == half) return 0.5 * (v + values[k].first);
  }
  return values.back().first;
}

}  // namespace

double cluster_cost(std::span<const Point> points, std::span<const double> weights,
                    const Point& site, Metric metric) {
  double total = 0.0;
  for (std::size_t j = 0; j < points.size(); ++j)
    total += weights[j] * distance(metric, site, points[j]);
  return total;
}

WeberResult weiszfeld(std::span<const Point> points, std::span<const double> weights, Point start,
                      const WeiszfeldOptions& options) {
  check_cluster(points, weights);
  if (!(options.tolerance > 0.0)) throw std::invalid_argument("weiszfeld tolerance must be positive");

  const std::size_t m = points.size();
  const double scale = bounding_scale(points);
  const double landing_radius = 1e-12 * (1.0 + scale);
  const double vertex_test_radius = 1e-6 * (1.0 + scale);
  const double step_tolerance = options.tolerance * (1.0 + scale);

  Point x = start;
  double value = cluster_cost(points, weights, x);
  if (options.value_trace) options.value_trace->push_back(value);

  WeberResult best{x, value, 0, false};
  std::vector<double> dist(m);

  for (std::size_t iter = 1; iter <= options.max_iterations; ++iter) {
    std::size_t nearest = 0;
    for (std::size_t j = 0; j < m; ++j) {
      dist[j] = distance(x, points[j]);
      if (dist[j] < dist[nearest]) nearest = j;
    }

    Point next;
    bool plain_step = true;
    if (dist[nearest] <= vertex_test_radius) {
      // Optimality test at the nearby demand point.
      const Point& vertex = points[nearest];
      double resting = 0.0, rx = 0.0, ry = 0.0, pull = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        const double d = distance(vertex, points[j]);
        if (d <= landing_radius) {
          resting += weights[j];
        } else {
          rx += weights[j] * (points[j].x - vertex.x) / d;
          ry += weights[j] * (points[j].y - vertex.y) / d;
          pull += weights[j] / d;
        }
      }
      const double resultant = std::hypot(rx, ry);
      if (resultant <= resting) {
        const double vertex_value = cluster_cost(points, weights, vertex);
        if (options.value_trace) options.value_trace->push_back(vertex_value);
        if (vertex_value <= best.value) best = {vertex, vertex_value, iter, true};
        best.iterations = iter;
        best.converged = true;
        return best;
      }
      if (dist[nearest] <= landing_radius) {
        const double step = (resultant - resting) / pull;
        next = {vertex.x + step * rx / resultant, vertex.y + step * ry / resultant};
        plain_step = false;
      }
    }
    if (plain_step) {
      double num_x = 0.0, num_y = 0.0, den = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        const double u = weights[j] / dist[j];
        num_x += u * points[j].x;
        num_y += u * points[j].y;
        den += u;
      }
      next = {num_x / den, num_y / den};
    }

    const double moved = distance(x, next);
    x = next;
    value = cluster_cost(points, weights, x);
    if (options.value_trace) options.value_trace->push_back(value);
    if (value <= best.value) {
      best.location = x;
      best.value = value;
    }
    best.iterations = iter;
    if (moved < step_tolerance) {
      best.converged = true;
      return best;
    }
  }
  return best;
}

WeberResult two_point_median(Point a, double weight_a, Point b, double weight_b) {
  const double d = distance(a, b);
  if (weight_a == weight_b)
    return {{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}, weight_a * d, 0, true};
  if (weight_a > weight_b) return {a, weight_b * d, 0, true};
  return {b, weight_a * d, 0, true};
}

WeberResult l1_median(std::span<const Point> points, std::span<const double> weights) {
  check_cluster(points, weights);
  std::vector<std::pair<double, double>> xs, ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    xs.emplace_back(points[j].x, weights[j]);
    ys.emplace_back(points[j].y, weights[j]);
  }
  const Point site{weighted_median(std::move(xs)), weighted_median(std::move(ys))};
  return {site, cluster_cost(points, weights, site, Metric::manhattan), 0, true};
}

WeberResult centroid(std::span<const Point> points, std::span<const double> weights) {
  check_cluster(points, weights);
  double sx = 0.0, sy = 0.0, total = 0.0;
  for (std::size_t j = 0; j < points.size(); ++j) {
    sx += weights[j] * points[j].x;
    sy += weights[j] * points[j].y;
    total += weights[j];
  }
  const Point site{sx / total, sy / total};
  return {site, cluster_cost(points, weights, site, Metric::squared_euclidean), 0, true};
}

WeberResult one_median(std::span<const Point> points, std::span<const double> weights,
                       Metric metric) {
  check_cluster(points, weights);
  switch (metric) {
    case Metric::manhattan: return l1_median(points, weights);
    case Metric::squared_euclidean: return centroid(points, weights);
    case Metric::euclidean: break;
  }
  if (points.size() == 1) return {points[0], 0.0, 0, true};
  if (points.size() == 2) return two_point_median(points[0], weights[0], points[1], weights[1]);
  return weiszfeld(points, weights, centroid(points, weights).location);
}

TriangleOptimum triangle_analytic(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("triangle leg must be positive");
  const double root3 = std::sqrt(3.0);
  return {std::atan((1.0 + a * root3) / (root3 + a)), std::sqrt(a * a + a * root3 + 1.0)};
}

}  // namespace pmedian
