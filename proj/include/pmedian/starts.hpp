#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "pmedian/core.hpp"
#include "pmedian/rng.hpp"

namespace pmedian {

/// Incremental evaluation of vertex swaps over a demand-point selection.
///
/// Holds three length-n distance vectors: the distance from each demand point
/// to its closest selected site, the same distance after one site has been
/// removed, and the distance after a candidate site has been added back. A
/// removal only recomputes points whose closest site was the removed one, and
/// an insertion is a single min per point, so one swap costs O(n) instead of
/// O(np).
class SwapWorkspace {
 public:
  SwapWorkspace(const Instance& instance, std::vector<std::size_t> selection,
                Metric metric = Metric::euclidean, bool skip_selected = true);

  const std::vector<std::size_t>& selection() const { return selection_; }
  bool is_selected(std::size_t j) const { return selected_[j] != 0; }
  double objective() const { return objective_; }

  std::span<const double> closest() const { return closest_; }
  std::span<const double> without_removed() const { return without_removed_; }
  std::span<const double> with_inserted() const { return with_inserted_; }

  // Takes selection()[position] out, filling without_removed().
  void remove(std::size_t position);

  // Cost of the selection with the removed site replaced by demand point k.
  double evaluate_insert(std::size_t k);

  // Makes the last evaluated swap permanent.
  void commit();

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  double site_distance(std::size_t site, std::size_t j) const {
    return distance(metric_, instance_->point(site), instance_->point(j));
  }

  const Instance* instance_;
  Metric metric_;
  bool skip_selected_;
  std::vector<std::size_t> selection_;
  std::vector<char> selected_;
  std::vector<double> closest_;
  std::vector<double> without_removed_;
  std::vector<double> with_inserted_;
  // Slightly inflated squares of without_removed_, a root-free pre-filter.
  std::vector<double> without_removed_sq_;
  double objective_ = 0.0;
  std::size_t removed_position_ = kNone;
  std::size_t inserted_ = kNone;
  double inserted_value_ = 0.0;
};

struct SwapEvaluation {
  std::span<const std::size_t> selection;  // before the swap
  std::size_t position = 0;
  std::size_t removed = 0;
  std::size_t inserted = 0;
  double value = 0.0;
  double incumbent = 0.0;
  bool accepted = false;
};

using SwapObserver = std::function<void(const SwapEvaluation&)>;

struct DescentOptions {
  Metric metric = Metric::euclidean;
  // Off: every swap is costed from scratch in O(np).
  bool use_shortcut = true;
  // Selected points keep distance zero after an insertion and can be skipped.
  bool skip_selected = true;
  SwapObserver observer;
};

DiscreteSelection rand_start(const Instance& instance, std::size_t p, Rng& rng);

// Greedy dispersion: two uniform picks, then repeatedly the unselected point
// with the largest (probability 2/3) or second-largest (1/3) Euclidean
// distance to the selection.
DiscreteSelection cons_start(const Instance& instance, std::size_t p, Rng& rng);

// Continues the dispersion construction from a given partial selection.
DiscreteSelection cons_complete(const Instance& instance, std::vector<std::size_t> initial,
                                std::size_t p, Rng& rng);

// Best-improvement swap descent over the full p(n-p) neighbourhood.
DiscreteSelection desc_3a(const Instance& instance, const DiscreteSelection& start,
                          const DescentOptions& options = {});

// First-improvement swap descent: removals in random order, insertions in
// random order, restarting after every accepted swap.
DiscreteSelection desc_3b(const Instance& instance, const DiscreteSelection& start, Rng& rng,
                          const DescentOptions& options = {});

DiscreteSelection comb_start(const Instance& instance, std::size_t p, Rng& rng,
                             const DescentOptions& options = {});

}  // namespace pmedian
