#pragma once

// Actuator selection: greedy epsilon-close selection, bisection over epsilon
// to reach exact feasibility, subset reachability over a union of balls, and
// the exhaustive oracles used to check them.

#include <cstddef>
#include <optional>
#include <vector>

#include "minreach/hitting_set.hpp"
#include "minreach/reachcore.hpp"

namespace minreach {

// Candidates whose gains differ by less than this (relative to ||v||^2) are
// treated as tied; ties go to the smallest index.
inline constexpr double kGainTieTolerance = 1e-12;

// Lower end of the bisection range, relative to ||v||^2.
inline constexpr double kEpsilonFloor = 1e-12;

struct GreedyTrace {
  std::vector<int> chosen;
  // residuals[0] is ||v||^2; residuals[k] follows the k-th pick.
  std::vector<double> residuals;
  double epsilon = 0.0;
};

struct GreedyResult {
  ActuatorSet actuators;
  GreedyTrace trace;

  double residual_sq() const { return trace.residuals.back(); }
};

// Adds, one at a time, the state whose Krylov columns most increase
// ||v[S(B)]||^2 until the residual is at most `eps`. Throws InputError for
// eps <= 0 and InfeasibleError if all n states leave the residual above eps.
GreedyResult greedy_eps(const LtiSystem& sys, const Vector& v, double eps);

// The greedy pick sequence does not depend on eps, only where it stops. This
// computes the sequence lazily so repeated runs at different eps share work.
class GreedyPath {
 public:
  GreedyPath(const LtiSystem& sys, Vector v);

  GreedyResult run(double eps);

  const Vector& target() const { return v_; }

 private:
  void step();

  KrylovTable table_;
  Vector v_;
  double norm_sq_;
  std::vector<int> chosen_;
  std::vector<double> residuals_;
  OrthoBasis basis_;
};

struct BisectionResult {
  ActuatorSet actuators;
  GreedyTrace trace;
  // Epsilon of the final greedy call.
  double final_eps = 0.0;
  // Midpoint of the bracket when the bisection loop stopped.
  double converged_midpoint = 0.0;
  // Number of greedy calls, including the last one.
  int greedy_calls = 0;

  double residual_sq() const { return trace.residuals.back(); }
};

// Bisection over eps in (floor, ||v||^2] driving the greedy selection to an
// exactly feasible actuator set. A probe whose result is not exactly feasible
// shrinks the upper end; a feasible one raises the lower end.
BisectionResult bisection_exact(const LtiSystem& sys, const Vector& v,
                                double accuracy);

struct Ball {
  Vector center;
  double radius_sq = 0.0;
};

struct SubsetReachResult {
  ActuatorSet actuators;
  std::size_t ball_index = 0;  // 1-based
  GreedyTrace trace;
};

// Runs greedy_eps(center_i, radius_sq_i) per ball and keeps the smallest set
// (ties: smallest ball index).
SubsetReachResult subset_reach(const LtiSystem& sys,
                               const std::vector<Ball>& balls);

// First set, in order of increasing cardinality and then lexicographic order,
// with residual at most eps; nullopt if none has at most k_max elements.
std::optional<ActuatorSet> brute_force_opt(const LtiSystem& sys,
                                           const Vector& v, double eps,
                                           int k_max);

// Every set of the minimum cardinality found by brute_force_opt.
std::vector<ActuatorSet> brute_force_all_opt(const LtiSystem& sys,
                                             const Vector& v, double eps,
                                             int k_max);

// Exact minimum hitting set by branch and bound. Among minimum sets the
// lexicographically smallest one is returned.
std::vector<int> min_hitting_set(const HittingSetInstance& instance);

}  // namespace minreach
