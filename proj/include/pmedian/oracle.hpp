#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pmedian/core.hpp"

namespace pmedian {

inline constexpr double kBruteForceLimit = 2e6;

// Exhaustive search over all C(n, p) demand-point selections.
DiscreteSelection brute_discrete(const Instance& instance, std::size_t p,
                                 Metric metric = Metric::euclidean);

// Exhaustive search over partitions into p nonempty clusters, each located by
// its metric's 1-median. Partitions are enumerated once per relabeling class
// (first-occurrence order); the first best in that order wins ties.
Solution brute_partition(const Instance& instance, std::size_t p,
                         Metric metric = Metric::euclidean);

// Rectangle with corners (0,0), (a,0), (0,1), (a,1) in that order.
Instance rectangle_instance(double a);

// Two 1.6-by-1 rectangles with facing sides x apart. Points A..H in order:
// bottom row A B C D, top row E F G H.
Instance two_rectangle_instance(double x);

struct RectangleTableEntry {
  std::vector<std::string> patterns;  // optimal clusterings, e.g. "ABE|FCDGH"
  double objective = 0.0;
};

// Closed-form Manhattan 2-median of the two-rectangle instance. At a
// breakpoint both adjacent clusterings are listed.
RectangleTableEntry two_rectangle_table(double x);

// Clusters of a two-rectangle assignment as letters, e.g. "ABE|CDFGH".
std::string rectangle_pattern(std::span<const std::size_t> assignment);

// Whether two clusterings of the eight rectangle corners coincide up to the
// left-right and top-bottom mirror symmetries of the figure.
bool same_rectangle_pattern(const std::string& a, const std::string& b);

// Gap x in [lo, hi] at which the squared-Euclidean 2-median of the
// two-rectangle instance switches to one cluster per rectangle, located by
// bisection on brute_partition to within `tolerance`.
double squared_euclidean_flip(double lo = 0.0, double hi = 2.0, double tolerance = 1e-9);

}  // namespace pmedian
