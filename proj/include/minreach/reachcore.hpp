#pragma once

// Reachability of dx/dt = A x + B u with B = diag(delta), delta in {0,1}^n.
// Indices of states are 1-based throughout the public API.

#include <limits>
#include <optional>
#include <vector>

#include "minreach/numkit.hpp"

namespace minreach {

// Exact-feasibility threshold, relative to ||v||^2.
inline constexpr double kExactTolerance = 1e-8;

// Largest state count accepted by the exhaustive subset enumerations.
inline constexpr Index kBruteForceCap = 16;

// The dynamics matrix A and an optional output matrix W (y = W x).
class LtiSystem {
 public:
  explicit LtiSystem(Matrix a);
  LtiSystem(Matrix a, Matrix w);

  Index n() const { return a_.rows(); }
  const Matrix& a() const { return a_; }
  const std::optional<Matrix>& w() const { return w_; }

  // Dimension of the space targets live in: rows of W, or n.
  Index output_dim() const { return w_ ? w_->rows() : n(); }

  // True when W is present and differs from the identity.
  bool weighted() const;

  friend bool operator==(const LtiSystem&, const LtiSystem&);

 private:
  Matrix a_;
  std::optional<Matrix> w_;
};

// Set of actuated states, kept sorted and duplicate-free (1-based).
class ActuatorSet {
 public:
  explicit ActuatorSet(Index n = 0) : n_(n) {}
  ActuatorSet(Index n, std::vector<int> indices);

  static ActuatorSet all(Index n);

  Index n() const { return n_; }
  const std::vector<int>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(int index) const;

  // Copy with `index` added.
  ActuatorSet with(int index) const;

  // The zero-one diagonal of the induced input matrix B.
  Vector delta() const;

  friend bool operator==(const ActuatorSet&, const ActuatorSet&) = default;

 private:
  Index n_;
  std::vector<int> indices_;
};

struct TransferSpec {
  Vector x0;
  Vector x1;
  double t0 = 0.0;
  double t1 = 1.0;
};

struct FeasibilityReport {
  double residual_sq = 0.0;
  bool feasible = false;
  Index basis_rank = 0;
};

// The unit-normalized columns W A^k e_i, k = 0..n-1. Columns that are exactly
// zero are kept as zero vectors and flagged.
struct KrylovColumns {
  std::vector<Vector> columns;
  std::vector<bool> is_zero;
};

KrylovColumns krylov_columns(const LtiSystem& sys, int index);

// Orthonormal vectors q_0 = e_i, q_1, ... spanning the same space as the
// columns A^k e_i, generated by Arnoldi (A q_k orthogonalized twice against
// the previous q's) and stopped once the space is numerically invariant.
// With an output matrix the vectors are W q_k, unit-normalized, zero ones
// dropped. Raw powers A^k e_i line up with the dominant eigenvectors after a
// few dozen steps and lose rank long before the subspace is exhausted.
std::vector<Vector> krylov_generators(const LtiSystem& sys, int index);

// Krylov generators of every state, computed once per system. Selection
// routines evaluate each index many times.
class KrylovTable {
 public:
  explicit KrylovTable(const LtiSystem& sys);

  Index n() const { return static_cast<Index>(table_.size()); }
  Index output_dim() const { return output_dim_; }
  const std::vector<Vector>& operator[](int index) const;

  // Grows `basis` with the columns of state `index`; stops early once the
  // basis is full.
  void extend(OrthoBasis& basis, int index) const;

  OrthoBasis subspace(const ActuatorSet& delta) const;

 private:
  Index output_dim_;
  std::vector<std::vector<Vector>> table_;
};

// Orthonormal basis of S(B) = span{ W A^k e_i : i in delta, k < n }, built in
// ascending index order from krylov_generators.
OrthoBasis reachable_subspace(const LtiSystem& sys, const ActuatorSet& delta);

// ||v||^2 - ||v[S(B)]||^2, clamped at zero.
double residual(const LtiSystem& sys, const ActuatorSet& delta,
                const Vector& v);
double residual(const OrthoBasis& subspace, const Vector& v);

// Exact feasibility of 0 -> v up to kExactTolerance. v = 0 is always feasible.
FeasibilityReport is_feasible(const LtiSystem& sys, const ActuatorSet& delta,
                              const Vector& v);
bool feasible_residual(double residual_sq, double norm_sq);

// Kalman rank test. Throws UnsupportedError for output-weighted systems.
bool is_controllable(const LtiSystem& sys, const ActuatorSet& delta);

// v = x1 - exp(A (t1 - t0)) x0. With an output matrix, x1 is an output
// target and v = x1 - W exp(A (t1 - t0)) x0.
Vector transfer_vector(const LtiSystem& sys, const TransferSpec& spec);

// Smallest residual over index sets that are one actuator short of exact
// feasibility; +infinity when no such set exists. Enumerates all 2^n subsets.
double epsilon_A(const LtiSystem& sys, const Vector& v);

inline constexpr double kNoThreshold = std::numeric_limits<double>::infinity();

void check_target(const LtiSystem& sys, const Vector& v);
void check_brute_force_size(Index n);

}  // namespace minreach
