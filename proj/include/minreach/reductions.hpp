#pragma once

// Hitting-set reductions to minimal reachability, and a verifier that checks
// each equivalence by brute force on both sides.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "minreach/hitting_set.hpp"
#include "minreach/reachcore.hpp"

namespace minreach {

enum class ReductionVariant { kLemma1, kLemma2, kLemma3 };

std::string_view to_string(ReductionVariant variant);
// Accepts "lemma1", "lemma2", "lemma3". Throws InputError otherwise.
ReductionVariant parse_variant(std::string_view name);

// A system built as A = V^-1 diag(1..n) V together with the target state.
struct ReducedTransfer {
  LtiSystem system;
  Vector chi;
  Matrix v_matrix;
};

// N = { x : x_1..x_m = 0, x_{m+1}..x_{m+p} > 0 }.
struct ConeTarget {
  int m = 0;
  int p = 0;

  bool contains(const Vector& x) const;
};

struct ReducedCone {
  LtiSystem system;
  ConeTarget target;
};

// n = m+p+1, V1 = [2I 0 1; Phi (m+1)I 0; 0 0 1], chi = V1^-1 * ones.
// The transfer 0 -> chi needs exactly (minimum hitting set + 1) actuators.
ReducedTransfer build_lemma1(const HittingSetInstance& instance);

// n = m+p+2, V2 = V1 bordered by a unit row and column,
// chi = V2^-1 * (1,..,1,0). Same count as build_lemma1, but the optimal
// actuator sets leave the system uncontrollable.
ReducedTransfer build_lemma2(const HittingSetInstance& instance);

// n = m+p, A = [0 0; Phi 0].
ReducedCone build_lemma3(const HittingSetInstance& instance);

// Whether span[B | AB] of the build_lemma3 system meets the cone: every set i
// must be covered by state m+i or by an actuated element of set i.
bool cone_k_reachable(const HittingSetInstance& instance,
                      const ActuatorSet& delta);

struct VerificationReport {
  ReductionVariant variant = ReductionVariant::kLemma1;
  int n = 0;
  int hitting_set_size = 0;
  std::vector<int> hitting_set;
  // Minimum actuator count on the reachability side; nullopt if nothing
  // within k_max works.
  std::optional<int> min_actuators;
  std::vector<ActuatorSet> optimal_sets;
  // lemma2 only: number of optimal sets that render the system controllable.
  int controllable_optima = 0;
  // Expected min_actuators: h+1 for lemma1/lemma2, h for lemma3.
  int expected = 0;
  bool pass = false;
  std::string detail;
};

// Computes the minimum hitting set h and the minimum actuator count a on the
// reduced system, and checks a == h+1 (lemma1, lemma2 with uncontrollability
// at every optimum) or a == h (lemma3).
VerificationReport verify_reduction(const HittingSetInstance& instance,
                                    ReductionVariant variant, int k_max);

}  // namespace minreach
