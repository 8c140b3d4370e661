#include "pmedian/cooper.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "pmedian/weber.hpp"

namespace pmedian {
namespace {

constexpr std::size_t kMaxAltRounds = 100000;
constexpr std::size_t kMaxTransferRounds = 1000000;
constexpr double kRatioZeroDistance = 1e-12;

struct Allocation {
  std::vector<std::size_t> assignment;
  std::vector<double> distance;
  double cost = 0.0;
};

Allocation allocate_with_distances(const Instance& instance, std::span<const Point> facilities,
                                   Metric metric) {
  Allocation out;
  out.assignment = allocate(instance, facilities, metric);
  out.distance.resize(instance.size());
  for (std::size_t j = 0; j < instance.size(); ++j) {
    out.distance[j] = distance(metric, facilities[out.assignment[j]], instance.point(j));
    out.cost += instance.weight(j) * out.distance[j];
  }
  return out;
}

struct ClusterData {
  std::vector<Point> points;
  std::vector<double> weights;
};

ClusterData gather(const Instance& instance, std::span<const std::size_t> members) {
  ClusterData c;
  c.points.reserve(members.size());
  c.weights.reserve(members.size());
  for (std::size_t j : members) {
    c.points.push_back(instance.point(j));
    c.weights.push_back(instance.weight(j));
  }
  return c;
}

// Re-solves the flagged clusters. A new site is kept unless it is strictly
// worse than the current one for the same members.
void locate(const Instance& instance, Metric metric, std::span<const std::size_t> assignment,
            std::vector<Point>& facilities, std::span<const char> changed) {
  const auto clusters = clusters_of(assignment, facilities.size());
  for (std::size_t i = 0; i < facilities.size(); ++i) {
    if (!changed[i] || clusters[i].empty()) continue;
    const ClusterData c = gather(instance, clusters[i]);
    const WeberResult r = one_median(c.points, c.weights, metric);
    const double current = cluster_cost(c.points, c.weights, facilities[i], metric);
    if (!(r.value > current)) facilities[i] = r.location;
  }
}

// Moves each empty facility onto the demand point farthest (weighted) from
// its facility, taking points only from clusters that keep a member.
std::vector<std::size_t> repair_empty(const Instance& instance, Metric metric,
                                      std::vector<Point>& facilities, Allocation& allocation) {
  std::vector<std::size_t> repaired;
  const std::size_t p = facilities.size();
  for (std::size_t attempt = 0; attempt < p; ++attempt) {
    std::vector<std::size_t> sizes(p, 0);
    for (std::size_t i : allocation.assignment) ++sizes[i];
    const auto empty = std::find(sizes.begin(), sizes.end(), std::size_t{0});
    if (empty == sizes.end()) break;

    std::size_t donor = instance.size();
    double farthest = 0.0;
    for (std::size_t j = 0; j < instance.size(); ++j) {
      const double v = instance.weight(j) * allocation.distance[j];
      if (sizes[allocation.assignment[j]] > 1 && v > farthest) {
        farthest = v;
        donor = j;
      }
    }
    if (donor == instance.size()) break;

    const auto i = static_cast<std::size_t>(empty - sizes.begin());
    facilities[i] = instance.point(donor);
    allocation = allocate_with_distances(instance, facilities, metric);
    repaired.push_back(i);
  }
  return repaired;
}

// Alternates location and allocation from the partition `assignment`, whose
// flagged clusters still need locating. Returns the final allocation cost.
double alternate(const Instance& instance, Metric metric, std::vector<Point>& facilities,
                 std::vector<std::size_t>& assignment, std::vector<char> changed,
                 Diagnostics& diagnostics) {
  double cost = 0.0;
  for (std::size_t round = 0; round < kMaxAltRounds; ++round) {
    locate(instance, metric, assignment, facilities, changed);
    Allocation next = allocate_with_distances(instance, facilities, metric);
    const auto repaired = repair_empty(instance, metric, facilities, next);
    ++diagnostics.iterations;
    diagnostics.degeneracy_repairs += repaired.size();
    diagnostics.objective_trace.push_back(next.cost);
    cost = next.cost;

    if (repaired.empty() && next.assignment == assignment) break;

    std::fill(changed.begin(), changed.end(), 0);
    for (std::size_t j = 0; j < assignment.size(); ++j) {
      if (assignment[j] != next.assignment[j]) {
        changed[assignment[j]] = 1;
        changed[next.assignment[j]] = 1;
      }
    }
    for (std::size_t i : repaired) changed[i] = 1;
    assignment = std::move(next.assignment);
  }
  return cost;
}

}  // namespace

Solution run_alt(const Instance& instance, std::span<const Point> start, Metric metric) {
  if (start.empty()) throw std::invalid_argument("run_alt needs at least one facility");
  Solution solution;
  solution.facilities.assign(start.begin(), start.end());

  Allocation initial = allocate_with_distances(instance, solution.facilities, metric);
  solution.diagnostics.degeneracy_repairs +=
      repair_empty(instance, metric, solution.facilities, initial).size();
  solution.diagnostics.objective_trace.push_back(initial.cost);
  solution.assignment = std::move(initial.assignment);

  std::vector<char> all(solution.p(), 1);
  solution.objective = alternate(instance, metric, solution.facilities, solution.assignment,
                                 std::move(all), solution.diagnostics);
  return solution;
}

std::vector<TransferCandidate> select_transfers(const Solution& solution, const Instance& instance,
                                                SelectionRule rule, std::size_t limit,
                                                Metric metric) {
  std::vector<TransferCandidate> candidates;
  const std::size_t p = solution.p();
  if (p < 2 || limit == 0) return candidates;
  const double zero_distance = kRatioZeroDistance * instance.scale();

  candidates.reserve(instance.size());
  for (std::size_t j = 0; j < instance.size(); ++j) {
    const Point& a = instance.point(j);
    const std::size_t closest = solution.assignment[j];
    std::size_t second = p;
    double d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p; ++i) {
      if (i == closest) continue;
      const double d = distance(metric, solution.facilities[i], a);
      if (d < d2) {
        d2 = d;
        second = i;
      }
    }
    const double d1 = distance(metric, solution.facilities[closest], a);
    double score = 0.0;
    if (rule == SelectionRule::ratio) {
      if (d1 <= zero_distance) continue;
      score = d2 / d1;
    } else {
      score = d2 - d1;
    }
    candidates.push_back({j, closest, second, d1, d2, score});
  }

  const auto by_score = [](const TransferCandidate& a, const TransferCandidate& b) {
    return a.score != b.score ? a.score < b.score : a.point < b.point;
  };
  const std::size_t keep = std::min(limit, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                    candidates.end(), by_score);
  candidates.resize(keep);
  return candidates;
}

bool try_transfer(Solution& solution, const Instance& instance, const TransferCandidate& candidate,
                  Metric metric) {
  const std::size_t j = candidate.point;
  if (j >= instance.size() || candidate.closest >= solution.p() ||
      candidate.second >= solution.p() || candidate.closest == candidate.second ||
      solution.assignment[j] != candidate.closest)
    throw std::invalid_argument("transfer candidate does not match the solution");

  std::vector<std::size_t> source, target;
  for (std::size_t k = 0; k < instance.size(); ++k) {
    if (solution.assignment[k] == candidate.closest) source.push_back(k);
    else if (solution.assignment[k] == candidate.second) target.push_back(k);
  }
  if (source.size() == 1) return false;

  const ClusterData old_source = gather(instance, source);
  const ClusterData old_target = gather(instance, target);
  const double before =
      cluster_cost(old_source.points, old_source.weights, solution.facilities[candidate.closest],
                   metric) +
      cluster_cost(old_target.points, old_target.weights, solution.facilities[candidate.second],
                   metric);

  std::erase(source, j);
  target.insert(std::upper_bound(target.begin(), target.end(), j), j);
  const ClusterData new_source = gather(instance, source);
  const ClusterData new_target = gather(instance, target);
  const WeberResult relocated_source = one_median(new_source.points, new_source.weights, metric);
  const WeberResult relocated_target = one_median(new_target.points, new_target.weights, metric);
  const double after = relocated_source.value + relocated_target.value;

  // Improvement is judged against the whole objective, not just the two clusters.
  const double total_after = solution.objective - before + after;
  if (!improves(total_after, solution.objective)) return false;

  solution.assignment[j] = candidate.second;
  solution.facilities[candidate.closest] = relocated_source.location;
  solution.facilities[candidate.second] = relocated_target.location;
  solution.objective =
      assignment_cost(instance, solution.facilities, solution.assignment, metric);
  return true;
}

Solution run_ialt(const Instance& instance, std::span<const Point> start, SelectionRule rule,
                  std::size_t limit, Metric metric) {
  Solution solution = run_alt(instance, start, metric);
  if (solution.p() < 2) return solution;

  for (std::size_t round = 0; round < kMaxTransferRounds; ++round) {
    const auto candidates = select_transfers(solution, instance, rule, limit, metric);
    bool accepted = false;
    for (const TransferCandidate& candidate : candidates) {
      if (try_transfer(solution, instance, candidate, metric)) {
        accepted = true;
        ++solution.diagnostics.transfers_accepted;
        solution.diagnostics.objective_trace.push_back(solution.objective);
        solution.objective =
            alternate(instance, metric, solution.facilities, solution.assignment,
                      std::vector<char>(solution.p(), 0), solution.diagnostics);
        break;
      }
      ++solution.diagnostics.transfers_rejected;
    }
    if (!accepted) break;
  }
  return solution;
}

}  // namespace pmedian
