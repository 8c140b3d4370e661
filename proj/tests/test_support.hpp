#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "pmedian/core.hpp"
#include "pmedian/rng.hpp"

namespace pmedian::testing {

// Uniform points in [0, side]^2, optionally with weights in [0.5, 3).
inline Instance random_instance(Rng& rng, std::size_t n, bool weighted = false, double side = 10.0) {
  std::vector<Point> points(n);
  std::vector<double> weights(n, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    points[j] = {side * rng.uniform01(), side * rng.uniform01()};
    if (weighted) weights[j] = 0.5 + 2.5 * rng.uniform01();
  }
  return Instance(std::move(points), std::move(weights), "random");
}

inline std::vector<Point> random_sites(Rng& rng, const Instance& instance, std::size_t p) {
  std::vector<Point> sites;
  for (std::size_t i = 0; i < p; ++i) sites.push_back(instance.point(rng.uniform_index(instance.size())));
  return sites;
}

inline bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

// True when no step of the trace rises above its predecessor.
inline bool non_increasing(const std::vector<double>& trace, double rel = 1e-12) {
  for (std::size_t k = 1; k < trace.size(); ++k)
    if (trace[k] > trace[k - 1] + rel * std::abs(trace[k - 1])) return false;
  return true;
}

}  // namespace pmedian::testing
