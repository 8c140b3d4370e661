#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pmedian/core.hpp"

namespace pmedian {

enum class SelectionRule {
  diff,   // second-closest minus closest distance
  ratio,  // second-closest over closest distance
};

struct TransferCandidate {
  std::size_t point = 0;
  std::size_t closest = 0;
  std::size_t second = 0;
  double d1 = 0.0;
  double d2 = 0.0;
  double score = 0.0;
};

inline constexpr std::size_t kDefaultTransferListLength = 20;

/// Cooper's alternating locate-allocate heuristic.
///
/// Allocation is nearest-facility with lowest-index ties. Only clusters whose
/// membership changed are re-located. A facility left without demand points
/// is moved onto the demand point with the largest weighted distance to its
/// current facility (counted in diagnostics.degeneracy_repairs). Stops when an
/// allocation reproduces the previous partition.
Solution run_alt(const Instance& instance, std::span<const Point> start,
                 Metric metric = Metric::euclidean);

// The `limit` most promising single-point transfers of an ALT-terminal
// solution, ascending by score then point index. Under the ratio rule, points
// sitting on their facility are skipped.
std::vector<TransferCandidate> select_transfers(const Solution& solution, const Instance& instance,
                                                SelectionRule rule,
                                                std::size_t limit = kDefaultTransferListLength,
                                                Metric metric = Metric::euclidean);

// Moves candidate.point from its closest to its second cluster and re-solves
// both 1-medians. Commits only on strict improvement of the total cost;
// otherwise `solution` is left untouched. A transfer that would empty the
// source cluster is rejected.
bool try_transfer(Solution& solution, const Instance& instance, const TransferCandidate& candidate,
                  Metric metric = Metric::euclidean);

// ALT followed by the transfer phase: after each accepted transfer ALT resumes
// from the current state and the candidate list is rebuilt; stops once every
// listed candidate fails.
Solution run_ialt(const Instance& instance, std::span<const Point> start, SelectionRule rule,
                  std::size_t limit = kDefaultTransferListLength, Metric metric = Metric::euclidean);

}  // namespace pmedian
