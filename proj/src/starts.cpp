#include "pmedian/starts.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace pmedian {
namespace {

void check_p(const Instance& instance, std::size_t p) {
  if (p == 0) throw std::invalid_argument("p must be at least 1");
  if (p > instance.size()) throw std::invalid_argument("p exceeds the number of demand points");
}

std::vector<std::size_t> unselected_points(const Instance& instance,
                                           std::span<const std::size_t> selection) {
  std::vector<char> taken(instance.size(), 0);
  for (std::size_t k : selection) taken[k] = 1;
  std::vector<std::size_t> out;
  out.reserve(instance.size() - selection.size());
  for (std::size_t j = 0; j < instance.size(); ++j)
    if (!taken[j]) out.push_back(j);
  return out;
}

// Shortcut-free swap costing, the reference for the workspace.
class DirectEvaluator {
 public:
  DirectEvaluator(const Instance& instance, std::vector<std::size_t> selection, Metric metric)
      : instance_(&instance), metric_(metric), selection_(std::move(selection)) {
    objective_ = selection_objective(instance, selection_, metric);
  }

  const std::vector<std::size_t>& selection() const { return selection_; }
  double objective() const { return objective_; }
  void remove(std::size_t position) { position_ = position; }

  double evaluate_insert(std::size_t k) {
    trial_ = selection_;
    trial_[position_] = k;
    value_ = selection_objective(*instance_, trial_, metric_);
    return value_;
  }

  void commit() {
    selection_ = trial_;
    objective_ = value_;
  }

 private:
  const Instance* instance_;
  Metric metric_;
  std::vector<std::size_t> selection_;
  std::vector<std::size_t> trial_;
  std::size_t position_ = 0;
  double objective_ = 0.0;
  double value_ = 0.0;
};

template <typename Evaluator>
DiscreteSelection first_improvement(const Instance& instance, Evaluator& evaluator, Rng& rng,
                                    const SwapObserver& observer) {
  const std::size_t p = evaluator.selection().size();
  bool improved = true;
  while (improved) {
    improved = false;
    std::vector<std::size_t> removal_order(p);
    std::iota(removal_order.begin(), removal_order.end(), std::size_t{0});
    rng.shuffle(std::span(removal_order));
    for (std::size_t position : removal_order) {
      evaluator.remove(position);
      std::vector<std::size_t> insertion_order = unselected_points(instance, evaluator.selection());
      rng.shuffle(std::span(insertion_order));
      for (std::size_t k : insertion_order) {
        const double value = evaluator.evaluate_insert(k);
        const double incumbent = evaluator.objective();
        const bool accepted = improves(value, incumbent);
        if (observer) {
          observer({evaluator.selection(), position, evaluator.selection()[position], k, value,
                    incumbent, accepted});
        }
        if (accepted) {
          evaluator.commit();
          improved = true;
          break;
        }
      }
      if (improved) break;
    }
  }
  return {evaluator.selection(), evaluator.objective()};
}

template <typename Evaluator>
DiscreteSelection best_improvement(const Instance& instance, Evaluator& evaluator,
                                   const SwapObserver& observer) {
  const std::size_t p = evaluator.selection().size();
  for (;;) {
    const double incumbent = evaluator.objective();
    double best_value = incumbent;
    std::size_t best_position = p;
    std::size_t best_insert = 0;
    for (std::size_t position = 0; position < p; ++position) {
      evaluator.remove(position);
      for (std::size_t k : unselected_points(instance, evaluator.selection())) {
        const double value = evaluator.evaluate_insert(k);
        const bool better = improves(value, incumbent) && value < best_value;
        if (observer) {
          observer({evaluator.selection(), position, evaluator.selection()[position], k, value,
                    incumbent, false});
        }
        if (better) {
          best_value = value;
          best_position = position;
          best_insert = k;
        }
      }
    }
    if (best_position == p) break;
    evaluator.remove(best_position);
    evaluator.evaluate_insert(best_insert);
    evaluator.commit();
  }
  return {evaluator.selection(), evaluator.objective()};
}

}  // namespace

SwapWorkspace::SwapWorkspace(const Instance& instance, std::vector<std::size_t> selection,
                             Metric metric, bool skip_selected)
    : instance_(&instance),
      metric_(metric),
      skip_selected_(skip_selected),
      selection_(std::move(selection)),
      selected_(instance.size(), 0),
      closest_(instance.size(), std::numeric_limits<double>::infinity()),
      without_removed_(instance.size(), 0.0),
      with_inserted_(instance.size(), 0.0) {
  if (selection_.empty()) throw std::invalid_argument("workspace needs a nonempty selection");
  for (std::size_t k : selection_) {
    if (k >= instance.size()) throw std::out_of_range("selection index out of range");
    if (selected_[k]) throw std::invalid_argument("selection indices must be distinct");
    selected_[k] = 1;
  }
  for (std::size_t j = 0; j < instance.size(); ++j) {
    for (std::size_t site : selection_) closest_[j] = std::min(closest_[j], site_distance(site, j));
    objective_ += instance.weight(j) * closest_[j];
  }
}

void SwapWorkspace::remove(std::size_t position) {
  if (position >= selection_.size()) throw std::out_of_range("removal position out of range");
  removed_position_ = position;
  inserted_ = kNone;
  const std::size_t removed = selection_[position];
  for (std::size_t j = 0; j < instance_->size(); ++j) {
    if (site_distance(removed, j) > closest_[j]) {
      without_removed_[j] = closest_[j];
      continue;
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < selection_.size(); ++s) {
      if (s != position) best = std::min(best, site_distance(selection_[s], j));
    }
    without_removed_[j] = best;
  }
  if (metric_ == Metric::euclidean) {
    without_removed_sq_.resize(instance_->size());
    for (std::size_t j = 0; j < instance_->size(); ++j)
      without_removed_sq_[j] = without_removed_[j] * without_removed_[j] * (1.0 + 1e-12);
  }
}

double SwapWorkspace::evaluate_insert(std::size_t k) {
  if (removed_position_ == kNone) throw std::logic_error("evaluate_insert before remove");
  if (k >= instance_->size() || selected_[k]) throw std::invalid_argument("insert must be unselected");
  const std::size_t removed = selection_[removed_position_];
  double total = 0.0;
  if (metric_ == Metric::euclidean) {
    // The inflated squared bound only filters; the stored value still comes
    // from the exact d < D2 comparison of the generic loop.
    const Point site = instance_->point(k);
    for (std::size_t j = 0; j < instance_->size(); ++j) {
      double value = without_removed_[j];
      if (!(skip_selected_ && selected_[j] && j != removed)) {
        const Point& a = instance_->point(j);
        const double dx = site.x - a.x;
        const double dy = site.y - a.y;
        const double sq = dx * dx + dy * dy;
        if (sq < without_removed_sq_[j]) {
          const double d = std::sqrt(sq);
          if (d < value) value = d;
        }
        total += instance_->weight(j) * value;
      }
      with_inserted_[j] = value;
    }
    inserted_ = k;
    inserted_value_ = total;
    return total;
  }
  for (std::size_t j = 0; j < instance_->size(); ++j) {
    if (skip_selected_ && selected_[j] && j != removed) {
      with_inserted_[j] = without_removed_[j];
      continue;
    }
    const double d = site_distance(k, j);
    with_inserted_[j] = d < without_removed_[j] ? d : without_removed_[j];
    total += instance_->weight(j) * with_inserted_[j];
  }
  inserted_ = k;
  inserted_value_ = total;
  return total;
}

void SwapWorkspace::commit() {
  if (inserted_ == kNone) throw std::logic_error("commit without an evaluated insert");
  selected_[selection_[removed_position_]] = 0;
  selected_[inserted_] = 1;
  selection_[removed_position_] = inserted_;
  closest_ = with_inserted_;
  objective_ = inserted_value_;
  removed_position_ = kNone;
  inserted_ = kNone;
}

DiscreteSelection rand_start(const Instance& instance, std::size_t p, Rng& rng) {
  check_p(instance, p);
  std::vector<std::size_t> order(instance.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t t = 0; t < p; ++t) std::swap(order[t], order[t + rng.uniform_index(order.size() - t)]);
  order.resize(p);
  return make_selection(instance, std::move(order));
}

DiscreteSelection cons_start(const Instance& instance, std::size_t p, Rng& rng) {
  check_p(instance, p);
  std::vector<std::size_t> initial{rng.uniform_index(instance.size())};
  if (p >= 2) {
    std::size_t second = rng.uniform_index(instance.size() - 1);
    if (second >= initial[0]) ++second;
    initial.push_back(second);
  }
  return cons_complete(instance, std::move(initial), p, rng);
}

DiscreteSelection cons_complete(const Instance& instance, std::vector<std::size_t> initial,
                                std::size_t p, Rng& rng) {
  check_p(instance, p);
  if (initial.empty() || initial.size() > p)
    throw std::invalid_argument("initial selection must hold between 1 and p points");
  const std::size_t n = instance.size();
  std::vector<char> taken(n, 0);
  std::vector<double> gap(n, std::numeric_limits<double>::infinity());
  const auto add = [&](std::size_t k) {
    if (k >= n || taken[k]) throw std::invalid_argument("initial selection must be distinct indices");
    taken[k] = 1;
    for (std::size_t j = 0; j < n; ++j) gap[j] = std::min(gap[j], distance(instance.point(k), instance.point(j)));
  };
  for (std::size_t k : initial) add(k);

  std::vector<std::size_t> selection = std::move(initial);
  while (selection.size() < p) {
    std::size_t first = n, second = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (taken[j]) continue;
      if (first == n || gap[j] > gap[first]) {
        second = first;
        first = j;
      } else if (second == n || gap[j] > gap[second]) {
        second = j;
      }
    }
    std::size_t pick = first;
    if (second != n && rng.uniform01() >= 2.0 / 3.0) pick = second;
    selection.push_back(pick);
    add(pick);
  }
  return make_selection(instance, std::move(selection));
}

DiscreteSelection desc_3a(const Instance& instance, const DiscreteSelection& start,
                          const DescentOptions& options) {
  if (options.use_shortcut) {
    SwapWorkspace workspace(instance, start.indices, options.metric, options.skip_selected);
    return best_improvement(instance, workspace, options.observer);
  }
  DirectEvaluator direct(instance, start.indices, options.metric);
  return best_improvement(instance, direct, options.observer);
}

DiscreteSelection desc_3b(const Instance& instance, const DiscreteSelection& start, Rng& rng,
                          const DescentOptions& options) {
  if (options.use_shortcut) {
    SwapWorkspace workspace(instance, start.indices, options.metric, options.skip_selected);
    return first_improvement(instance, workspace, rng, options.observer);
  }
  DirectEvaluator direct(instance, start.indices, options.metric);
  return first_improvement(instance, direct, rng, options.observer);
}

DiscreteSelection comb_start(const Instance& instance, std::size_t p, Rng& rng,
                             const DescentOptions& options) {
  return desc_3b(instance, cons_start(instance, p, rng), rng, options);
}

}  // namespace pmedian
