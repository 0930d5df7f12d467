#include "minreach/reachcore.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

#include "minreach/errors.hpp"

namespace minreach {

namespace {

void check_index(Index n, int index) {
  if (index < 1 || index > n) {
    throw InputError("state index " + std::to_string(index) +
                     " outside [1, " + std::to_string(n) + "]");
  }
}

void extend_with(OrthoBasis& basis, const std::vector<Vector>& generators) {
  for (std::size_t k = 0; k < generators.size() && !basis.full(); ++k) {
    basis.extend(generators[k]);
  }
}

}  // namespace

LtiSystem::LtiSystem(Matrix a) : a_(std::move(a)) {
  if (a_.rows() != a_.cols()) {
    throw DimensionError("system matrix is " + std::to_string(a_.rows()) +
                         "x" + std::to_string(a_.cols()) + ", not square");
  }
  if (!a_.allFinite()) throw InputError("system matrix has non-finite entries");
}

LtiSystem::LtiSystem(Matrix a, Matrix w) : LtiSystem(std::move(a)) {
  if (w.cols() != n()) {
    throw DimensionError("output matrix has " + std::to_string(w.cols()) +
                         " columns, expected " + std::to_string(n()));
  }
  if (!w.allFinite()) throw InputError("output matrix has non-finite entries");
  w_ = std::move(w);
}

bool LtiSystem::weighted() const {
  return w_ && !(w_->rows() == n() && w_->isIdentity(0.0));
}

bool operator==(const LtiSystem& lhs, const LtiSystem& rhs) {
  if (lhs.a_.rows() != rhs.a_.rows() || lhs.a_ != rhs.a_) return false;
  if (lhs.w_.has_value() != rhs.w_.has_value()) return false;
  if (!lhs.w_) return true;
  return lhs.w_->rows() == rhs.w_->rows() &&
         lhs.w_->cols() == rhs.w_->cols() && *lhs.w_ == *rhs.w_;
}

ActuatorSet::ActuatorSet(Index n, std::vector<int> indices)
    : n_(n), indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw InputError("actuator set has duplicate indices");
  }
  for (int i : indices_) check_index(n_, i);
}

ActuatorSet ActuatorSet::all(Index n) {
  ActuatorSet set(n);
  for (int i = 1; i <= n; ++i) set.indices_.push_back(i);
  return set;
}

bool ActuatorSet::contains(int index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

ActuatorSet ActuatorSet::with(int index) const {
  check_index(n_, index);
  ActuatorSet out = *this;
  auto it = std::lower_bound(out.indices_.begin(), out.indices_.end(), index);
  if (it == out.indices_.end() || *it != index) out.indices_.insert(it, index);
  return out;
}

Vector ActuatorSet::delta() const {
  Vector d = Vector::Zero(n_);
  for (int i : indices_) d(i - 1) = 1.0;
  return d;
}

KrylovColumns krylov_columns(const LtiSystem& sys, int index) {
  const Index n = sys.n();
  check_index(n, index);

  KrylovColumns out;
  out.columns.reserve(n);
  out.is_zero.reserve(n);

  // Directions of A^k e_i are carried normalized; only the direction matters
  // for the span and the raw powers overflow quickly.
  Vector state = Vector::Unit(n, index - 1);
  bool state_zero = false;
  for (Index k = 0; k < n; ++k) {
    if (k > 0 && !state_zero) {
      state = sys.a() * state;
      const double norm = state.norm();
      if (norm == 0.0) {
        state_zero = true;
      } else {
        state /= norm;
      }
    }
    Vector col = state_zero ? Vector::Zero(sys.output_dim())
                            : (sys.w() ? Vector(*sys.w() * state) : state);
    const double norm = col.norm();
    const bool zero = norm == 0.0;
    if (!zero) col /= norm;
    out.columns.push_back(std::move(col));
    out.is_zero.push_back(zero);
  }
  return out;
}

std::vector<Vector> krylov_generators(const LtiSystem& sys, int index) {
  const Index n = sys.n();
  check_index(n, index);

  OrthoBasis arnoldi(n);
  arnoldi.extend(Vector::Unit(n, index - 1));
  for (Index k = 0; k + 1 < n; ++k) {
    const Vector next = sys.a() * arnoldi.columns().col(k);
    const double scale = next.norm();
    if (scale == 0.0) break;
    Vector w = next - arnoldi.project(next);
    w -= arnoldi.project(w);
    if (w.norm() <= kRankTolerance * scale) break;
    arnoldi.extend(w);
    if (arnoldi.rank() != k + 2) break;
  }

  std::vector<Vector> out;
  out.reserve(arnoldi.rank());
  for (Index k = 0; k < arnoldi.rank(); ++k) {
    if (!sys.w()) {
      out.emplace_back(arnoldi.columns().col(k));
      continue;
    }
    Vector y = *sys.w() * arnoldi.columns().col(k);
    const double norm = y.norm();
    if (norm > 0.0) out.push_back(y / norm);
  }
  return out;
}

KrylovTable::KrylovTable(const LtiSystem& sys) : output_dim_(sys.output_dim()) {
  table_.reserve(sys.n());
  for (int i = 1; i <= sys.n(); ++i) table_.push_back(krylov_generators(sys, i));
}

const std::vector<Vector>& KrylovTable::operator[](int index) const {
  check_index(n(), index);
  return table_[index - 1];
}

void KrylovTable::extend(OrthoBasis& basis, int index) const {
  extend_with(basis, (*this)[index]);
}

OrthoBasis KrylovTable::subspace(const ActuatorSet& delta) const {
  if (delta.n() != n()) {
    throw DimensionError("actuator set over " + std::to_string(delta.n()) +
                         " states for a system with " + std::to_string(n()));
  }
  OrthoBasis basis(output_dim_);
  for (int i : delta.indices()) extend(basis, i);
  return basis;
}

OrthoBasis reachable_subspace(const LtiSystem& sys, const ActuatorSet& delta) {
  if (delta.n() != sys.n()) {
    throw DimensionError("actuator set over " + std::to_string(delta.n()) +
                         " states for a system with " +
                         std::to_string(sys.n()));
  }
  OrthoBasis basis(sys.output_dim());
  for (int i : delta.indices()) extend_with(basis, krylov_generators(sys, i));
  return basis;
}

void check_target(const LtiSystem& sys, const Vector& v) {
  if (v.size() != sys.output_dim()) {
    throw DimensionError("target of dimension " + std::to_string(v.size()) +
                         ", system output dimension is " +
                         std::to_string(sys.output_dim()));
  }
  if (!v.allFinite()) throw InputError("target has non-finite entries");
}

void check_brute_force_size(Index n) {
  if (n > kBruteForceCap) {
    throw CapacityError("exhaustive search supports at most " +
                        std::to_string(kBruteForceCap) + " states, got " +
                        std::to_string(n));
  }
}

double residual(const OrthoBasis& subspace, const Vector& v) {
  return std::max(0.0, v.squaredNorm() - subspace.project_norm_sq(v));
}

double residual(const LtiSystem& sys, const ActuatorSet& delta,
                const Vector& v) {
  check_target(sys, v);
  return residual(reachable_subspace(sys, delta), v);
}

bool feasible_residual(double residual_sq, double norm_sq) {
  return residual_sq <= kExactTolerance * norm_sq;
}

FeasibilityReport is_feasible(const LtiSystem& sys, const ActuatorSet& delta,
                              const Vector& v) {
  check_target(sys, v);
  const OrthoBasis basis = reachable_subspace(sys, delta);
  FeasibilityReport report;
  report.residual_sq = residual(basis, v);
  report.feasible = feasible_residual(report.residual_sq, v.squaredNorm());
  report.basis_rank = basis.rank();
  return report;
}

bool is_controllable(const LtiSystem& sys, const ActuatorSet& delta) {
  if (sys.weighted()) {
    throw UnsupportedError(
        "controllability is defined for the state space only (W must be I)");
  }
  return reachable_subspace(sys, delta).rank() == sys.n();
}

Vector transfer_vector(const LtiSystem& sys, const TransferSpec& spec) {
  if (spec.x0.size() != sys.n() || spec.x1.size() != sys.output_dim()) {
    throw DimensionError("transfer needs x0 of dimension " +
                         std::to_string(sys.n()) + " and x1 of dimension " +
                         std::to_string(sys.output_dim()));
  }
  if (!(spec.t1 > spec.t0)) throw InputError("transfer requires t1 > t0");
  if (!spec.x0.allFinite() || !spec.x1.allFinite()) {
    throw InputError("transfer states have non-finite entries");
  }
  const Vector free_response = mat_exp(sys.a(), spec.t1 - spec.t0) * spec.x0;
  if (sys.w()) return spec.x1 - *sys.w() * free_response;
  return spec.x1 - free_response;
}

double epsilon_A(const LtiSystem& sys, const Vector& v) {
  check_brute_force_size(sys.n());
  check_target(sys, v);
  const double norm_sq = v.squaredNorm();
  if (norm_sq == 0.0) throw InputError("epsilon_A requires a non-zero target");

  const KrylovTable table(sys);
  const auto n = static_cast<int>(sys.n());
  const std::uint32_t subsets = 1u << n;
  std::vector<double> residuals(subsets);
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    OrthoBasis basis(table.output_dim());
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) table.extend(basis, i + 1);
    }
    residuals[mask] = residual(basis, v);
  }

  double best = kNoThreshold;
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    if (feasible_residual(residuals[mask], norm_sq)) continue;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) continue;
      if (feasible_residual(residuals[mask | (1u << i)], norm_sq)) {
        best = std::min(best, residuals[mask]);
        break;
      }
    }
  }
  return best;
}

}  // namespace minreach
