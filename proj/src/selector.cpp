#include "minreach/selector.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "minreach/errors.hpp"

namespace minreach {

GreedyPath::GreedyPath(const LtiSystem& sys, Vector v)
    : table_(sys),
      v_(std::move(v)),
      norm_sq_(v_.squaredNorm()),
      residuals_{norm_sq_},
      basis_(sys.output_dim()) {
  check_target(sys, v_);
}

void GreedyPath::step() {
  const double current = basis_.project_norm_sq(v_);
  const double tie = kGainTieTolerance * norm_sq_;

  int best_index = 0;
  double best_gain = 0.0;
  OrthoBasis best_basis;
  for (int i = 1; i <= table_.n(); ++i) {
    if (std::find(chosen_.begin(), chosen_.end(), i) != chosen_.end()) continue;
    OrthoBasis candidate = basis_;
    table_.extend(candidate, i);
    const double gain = candidate.project_norm_sq(v_) - current;
    if (best_index == 0 || gain > best_gain + tie) {
      best_index = i;
      best_gain = gain;
      best_basis = std::move(candidate);
    }
  }

  chosen_.push_back(best_index);
  basis_ = std::move(best_basis);
  residuals_.push_back(residual(basis_, v_));
}

GreedyResult GreedyPath::run(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw InputError("greedy selection requires a finite eps > 0");
  }
  std::size_t picks = 0;
  while (residuals_[picks] > eps) {
    if (picks == chosen_.size()) {
      if (static_cast<Index>(chosen_.size()) == table_.n()) break;
      step();
    }
    ++picks;
  }

  GreedyResult result{
      ActuatorSet(table_.n(), {chosen_.begin(), chosen_.begin() + picks}),
      GreedyTrace{{chosen_.begin(), chosen_.begin() + picks},
                  {residuals_.begin(), residuals_.begin() + picks + 1},
                  eps}};
  return result;
}

GreedyResult greedy_eps(const LtiSystem& sys, const Vector& v, double eps) {
  GreedyPath path(sys, v);
  GreedyResult result = path.run(eps);
  if (result.residual_sq() > eps) {
    throw InfeasibleError("no actuator set reaches residual " +
                              std::to_string(eps) + "; best is " +
                              std::to_string(result.residual_sq()),
                          result.residual_sq());
  }
  return result;
}

BisectionResult bisection_exact(const LtiSystem& sys, const Vector& v,
                                double accuracy) {
  if (!(accuracy > 0.0) || !std::isfinite(accuracy)) {
    throw InputError("bisection accuracy must be finite and positive");
  }
  GreedyPath path(sys, v);
  const double norm_sq = v.squaredNorm();

  BisectionResult out;
  if (norm_sq == 0.0) {
    out.actuators = ActuatorSet(sys.n());
    out.trace.residuals = {0.0};
    return out;
  }

  const double floor = kEpsilonFloor * norm_sq;
  const auto feasible = [&](const GreedyResult& r) {
    return feasible_residual(r.residual_sq(), norm_sq);
  };
  const auto probe = [&](double eps) {
    ++out.greedy_calls;
    return path.run(std::max(eps, floor));
  };

  double lower = 0.0;
  double upper = norm_sq;
  double eps = 0.5 * (lower + upper);
  GreedyResult current{ActuatorSet(sys.n()), GreedyTrace{{}, {norm_sq}, 0.0}};
  while (upper - lower > accuracy) {
    current = probe(eps);
    if (!feasible(current)) {
      upper = eps;
    } else {
      lower = eps;
    }
    eps = 0.5 * (lower + upper);
  }
  out.converged_midpoint = eps;

  if (!feasible(current)) {
    upper = eps;
    eps = 0.5 * (lower + upper);
  }
  current = probe(eps);

  // The greedy run at the final eps can stop one pick short of exact
  // feasibility. `lower` is only ever set by a feasible probe; without one,
  // halve down to the floor.
  if (!feasible(current) && lower > 0.0) {
    eps = lower;
    current = probe(eps);
  }
  while (!feasible(current) && eps > floor) {
    eps = std::max(0.5 * eps, floor);
    current = probe(eps);
  }
  if (!feasible(current)) {
    throw InfeasibleError(
        "target not exactly reachable even with every state actuated",
        current.residual_sq());
  }

  out.actuators = std::move(current.actuators);
  out.trace = std::move(current.trace);
  out.final_eps = std::max(eps, floor);
  return out;
}

SubsetReachResult subset_reach(const LtiSystem& sys,
                               const std::vector<Ball>& balls) {
  if (balls.empty()) throw InputError("subset reachability needs at least one ball");
  for (const Ball& ball : balls) {
    check_target(sys, ball.center);
    if (!(ball.radius_sq > 0.0) || !std::isfinite(ball.radius_sq)) {
      throw InputError("ball radius_sq must be finite and positive");
    }
  }

  std::optional<SubsetReachResult> best;
  double best_residual = kNoThreshold;
  for (std::size_t b = 0; b < balls.size(); ++b) {
    GreedyPath path(sys, balls[b].center);
    GreedyResult r = path.run(balls[b].radius_sq);
    if (r.residual_sq() > balls[b].radius_sq) {
      best_residual = std::min(best_residual, r.residual_sq());
      continue;
    }
    if (!best || r.actuators.size() < best->actuators.size()) {
      best = SubsetReachResult{std::move(r.actuators), b + 1, std::move(r.trace)};
    }
  }
  if (!best) {
    throw InfeasibleError("no ball is reachable with every state actuated",
                          best_residual);
  }
  return *best;
}

namespace {

// Enumerates subsets by increasing cardinality, lexicographically within a
// cardinality, sharing partial bases along the recursion.
std::vector<ActuatorSet> exhaustive_search(const LtiSystem& sys,
                                           const Vector& v, double eps,
                                           int k_max, bool first_only) {
  check_brute_force_size(sys.n());
  check_target(sys, v);
  if (!(eps >= 0.0)) throw InputError("brute force requires eps >= 0");
  const KrylovTable table(sys);
  const int n = static_cast<int>(sys.n());
  k_max = std::min(k_max, n);

  std::vector<ActuatorSet> found;
  std::vector<int> combo;
  for (int k = 0; k <= k_max; ++k) {
    std::function<bool(int, const OrthoBasis&)> descend =
        [&](int start, const OrthoBasis& basis) -> bool {
      if (static_cast<int>(combo.size()) == k) {
        if (residual(basis, v) <= eps) {
          found.emplace_back(sys.n(), combo);
          return first_only;
        }
        return false;
      }
      const int remaining = k - static_cast<int>(combo.size());
      for (int i = start; i <= n - remaining + 1; ++i) {
        OrthoBasis next = basis;
        table.extend(next, i);
        combo.push_back(i);
        const bool stop = descend(i + 1, next);
        combo.pop_back();
        if (stop) return true;
      }
      return false;
    };
    descend(1, OrthoBasis(table.output_dim()));
    if (!found.empty()) break;
  }
  return found;
}

}  // namespace

std::optional<ActuatorSet> brute_force_opt(const LtiSystem& sys,
                                           const Vector& v, double eps,
                                           int k_max) {
  auto found = exhaustive_search(sys, v, eps, k_max, true);
  if (found.empty()) return std::nullopt;
  return std::move(found.front());
}

std::vector<ActuatorSet> brute_force_all_opt(const LtiSystem& sys,
                                             const Vector& v, double eps,
                                             int k_max) {
  return exhaustive_search(sys, v, eps, k_max, false);
}

namespace {

class HittingSetSearch {
 public:
  explicit HittingSetSearch(const HittingSetInstance& instance)
      : instance_(instance),
        hit_count_(instance.sets.size(), 0),
        last_element_(instance.sets.size(), 0),
        containing_(instance.m + 1) {
    for (std::size_t s = 0; s < instance.sets.size(); ++s) {
      for (int e : instance.sets[s]) {
        containing_[e].push_back(s);
        last_element_[s] = std::max(last_element_[s], e);
      }
    }
    // Any single element per set is a valid hitting set; start from the
    // trivial bound of one element per set plus one.
    best_size_ = instance.p() + 1;
  }

  std::vector<int> solve() {
    descend(1);
    return best_;
  }

 private:
  // Greedy packing of pairwise disjoint unhit sets, restricted to elements
  // >= next: each needs its own element, so the count is a lower bound.
  int lower_bound(int next) const {
    std::vector<char> used(instance_.m + 1, 0);
    int count = 0;
    for (std::size_t s = 0; s < instance_.sets.size(); ++s) {
      if (hit_count_[s] > 0) continue;
      bool disjoint = true;
      for (int e : instance_.sets[s]) {
        if (e >= next && used[e]) {
          disjoint = false;
          break;
        }
      }
      if (!disjoint) continue;
      for (int e : instance_.sets[s]) {
        if (e >= next) used[e] = 1;
      }
      ++count;
    }
    return count;
  }

  void descend(int element) {
    const int bound = lower_bound(element);
    if (static_cast<int>(chosen_.size()) + bound >= best_size_) return;
    if (bound == 0) {
      best_size_ = static_cast<int>(chosen_.size());
      best_ = chosen_;
      return;
    }
    if (element > instance_.m) return;

    // Include first so that minimum sets are met in lexicographic order.
    bool useful = false;
    for (std::size_t s : containing_[element]) useful |= hit_count_[s] == 0;
    if (useful) {
      for (std::size_t s : containing_[element]) ++hit_count_[s];
      chosen_.push_back(element);
      descend(element + 1);
      chosen_.pop_back();
      for (std::size_t s : containing_[element]) --hit_count_[s];
    }

    // Excluding is possible only if every unhit set still has a later element.
    for (std::size_t s = 0; s < instance_.sets.size(); ++s) {
      if (hit_count_[s] == 0 && last_element_[s] <= element) return;
    }
    descend(element + 1);
  }

  const HittingSetInstance& instance_;
  std::vector<int> hit_count_;
  std::vector<int> last_element_;
  std::vector<std::vector<std::size_t>> containing_;
  std::vector<int> chosen_;
  std::vector<int> best_;
  int best_size_;
};

}  // namespace

std::vector<int> min_hitting_set(const HittingSetInstance& instance) {
  validate(instance);
  return HittingSetSearch(instance).solve();
}

}  // namespace minreach
