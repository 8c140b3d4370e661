#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pmedian {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

enum class Metric { euclidean, manhattan, squared_euclidean };

std::string_view to_string(Metric metric);
Metric parse_metric(std::string_view name);

// Relative margin a candidate objective must beat the incumbent by to count
// as an improvement. Shared by every descent in the library.
inline constexpr double kImprovementTolerance = 1e-12;

bool improves(double candidate, double incumbent);

// Demand points with positive weights. Immutable once built.
class Instance {
 public:
  Instance(std::vector<Point> points, std::vector<double> weights, std::string id = {});
  explicit Instance(std::vector<Point> points, std::string id = {});

  std::size_t size() const { return points_.size(); }
  std::span<const Point> points() const { return points_; }
  std::span<const double> weights() const { return weights_; }
  const Point& point(std::size_t j) const { return points_[j]; }
  double weight(std::size_t j) const { return weights_[j]; }
  const std::string& id() const { return id_; }

  // Longest side of the axis-parallel bounding box.
  double scale() const { return scale_; }

 private:
  std::vector<Point> points_;
  std::vector<double> weights_;
  std::string id_;
  double scale_ = 0.0;
};

struct Diagnostics {
  std::size_t iterations = 0;
  std::size_t transfers_accepted = 0;
  std::size_t transfers_rejected = 0;
  std::size_t degeneracy_repairs = 0;
  // Objective after every allocation phase and every accepted transfer.
  std::vector<double> objective_trace;

  friend bool operator==(const Diagnostics&, const Diagnostics&) = default;
};

// Continuous solution: facility sites, the partition they induce and its cost.
struct Solution {
  std::vector<Point> facilities;
  std::vector<std::size_t> assignment;
  double objective = 0.0;
  Diagnostics diagnostics;

  std::size_t p() const { return facilities.size(); }

  friend bool operator==(const Solution&, const Solution&) = default;
};

// Facilities restricted to demand points, identified by index.
struct DiscreteSelection {
  std::vector<std::size_t> indices;
  double objective = 0.0;

  friend bool operator==(const DiscreteSelection&, const DiscreteSelection&) = default;
};

double distance(Metric metric, const Point& a, const Point& b);

inline double distance(const Point& a, const Point& b) { return distance(Metric::euclidean, a, b); }

// Nearest-facility allocation; ties go to the lowest facility index.
std::vector<std::size_t> allocate(const Instance& instance, std::span<const Point> facilities,
                                  Metric metric = Metric::euclidean);

// Sum of weighted distances from each demand point to its nearest facility.
double objective(const Instance& instance, std::span<const Point> facilities,
                 Metric metric = Metric::euclidean);

// Cost of a fixed assignment, which need not be nearest-facility.
double assignment_cost(const Instance& instance, std::span<const Point> facilities,
                       std::span<const std::size_t> assignment, Metric metric = Metric::euclidean);

std::vector<std::vector<std::size_t>> clusters_of(std::span<const std::size_t> assignment,
                                                  std::size_t p);

std::vector<Point> sites_of(const Instance& instance, std::span<const std::size_t> indices);

double selection_objective(const Instance& instance, std::span<const std::size_t> indices,
                           Metric metric = Metric::euclidean);

// Validates that indices are distinct and in range, then evaluates them.
DiscreteSelection make_selection(const Instance& instance, std::vector<std::size_t> indices,
                                 Metric metric = Metric::euclidean);

}  // namespace pmedian
