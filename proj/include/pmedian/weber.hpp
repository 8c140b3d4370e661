#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pmedian/core.hpp"

namespace pmedian {

struct WeberResult {
  Point location;
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

struct WeiszfeldOptions {
  double tolerance = 1e-10;
  std::size_t max_iterations = 10000;
  // When set, receives the cost at the start point and after every step.
  std::vector<double>* value_trace = nullptr;
};

/// Weighted Euclidean 1-median by Weiszfeld's fixed point.
///
/// An iterate that lands on a demand point tests that point's optimality
/// condition: if the resultant pull of the other points does not exceed the
/// weight sitting there, the point is optimal. Otherwise the iterate steps
/// off along the resultant with the Vardi-Zhang step length, which keeps the
/// cost decreasing. The same test is applied whenever an iterate gets close
/// to a demand point, so vertex optima are reached exactly instead of being
/// approached at the slow linear rate.
WeberResult weiszfeld(std::span<const Point> points, std::span<const double> weights, Point start,
                      const WeiszfeldOptions& options = {});

// Equal weights take the midpoint; otherwise the heavier endpoint.
WeberResult two_point_median(Point a, double weight_a, Point b, double weight_b);

// Coordinate-wise weighted median; median intervals resolve to their midpoint.
WeberResult l1_median(std::span<const Point> points, std::span<const double> weights);

// Weighted mean, the 1-median under squared Euclidean distance.
WeberResult centroid(std::span<const Point> points, std::span<const double> weights);

double cluster_cost(std::span<const Point> points, std::span<const double> weights,
                    const Point& site, Metric metric = Metric::euclidean);

// Routes a cluster to the solver for its metric. Euclidean clusters of one
// point return it, two points go to two_point_median, larger clusters run
// Weiszfeld from the weighted centroid.
WeberResult one_median(std::span<const Point> points, std::span<const double> weights,
                       Metric metric = Metric::euclidean);

struct TriangleOptimum {
  double theta = 0.0;  // radians, angle at the origin between the a-leg and the optimum
  double value = 0.0;
};

// Closed-form 1-median of the right triangle (0,0), (a,0), (0,1).
TriangleOptimum triangle_analytic(double a);

}  // namespace pmedian
