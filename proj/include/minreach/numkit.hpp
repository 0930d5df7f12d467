#pragma once

// Dense real linear algebra used by every reachability computation: the
// matrix exponential and an incrementally grown orthonormal basis.

#include <Eigen/Dense>

namespace minreach {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Relative threshold below which a new column counts as already in the span.
inline constexpr double kRankTolerance = 1e-10;

bool all_finite(const Matrix& m);
bool all_finite(const Vector& v);

// exp(a * t). Throws DimensionError for non-square `a` and InputError for
// non-finite input.
Matrix mat_exp(const Matrix& a, double t);

// Orthonormal basis of a subspace of R^ambient_dim, grown one column at a
// time with twice-applied classical Gram-Schmidt.
class OrthoBasis {
 public:
  OrthoBasis() = default;
  explicit OrthoBasis(Index ambient_dim);

  Index ambient_dim() const { return ambient_dim_; }
  Index rank() const { return rank_; }
  bool full() const { return rank_ == ambient_dim_; }

  // The stored orthonormal columns, ambient_dim x rank.
  auto columns() const {
    return q_.leftCols(rank_);
  }

  // Adds the direction of `col` unless it already lies in the span (up to
  // kRankTolerance). Returns true when the column was absorbed, i.e. the
  // basis did not change. Exact zero columns are always absorbed.
  bool extend(const Vector& col);

  // Orthogonal projection of v onto the span.
  Vector project(const Vector& v) const;

  // ||v[span]||^2, the squared norm of the projection.
  double project_norm_sq(const Vector& v) const;

 private:
  void check_dim(Index dim) const;

  Index ambient_dim_ = 0;
  Index rank_ = 0;
  Matrix q_;
};

struct ExtendResult {
  OrthoBasis basis;
  bool absorbed = false;
};

// Value-semantics form of OrthoBasis::extend.
ExtendResult basis_extend(const OrthoBasis& basis, const Vector& col);

inline double project_norm_sq(const OrthoBasis& basis, const Vector& v) {
  return basis.project_norm_sq(v);
}

}  // namespace minreach
