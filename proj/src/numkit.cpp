#include "minreach/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "minreach/errors.hpp"

namespace minreach {

bool all_finite(const Matrix& m) { return m.allFinite(); }
bool all_finite(const Vector& v) { return v.allFinite(); }

Matrix mat_exp(const Matrix& a, double t) {
  if (a.rows() != a.cols()) {
    throw DimensionError("mat_exp: matrix is " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + ", not square");
  }
  if (!std::isfinite(t) || !a.allFinite()) {
    throw InputError("mat_exp: non-finite input");
  }
  if (a.rows() == 0) return Matrix(0, 0);
  if (t == 0.0) return Matrix::Identity(a.rows(), a.cols());
  // Scaling and squaring around a degree-13 Pade approximant.
  const Matrix scaled = a * t;
  return scaled.exp();
}

OrthoBasis::OrthoBasis(Index ambient_dim)
    : ambient_dim_(ambient_dim), q_(ambient_dim, ambient_dim) {
  if (ambient_dim < 0) throw InputError("OrthoBasis: negative dimension");
}

void OrthoBasis::check_dim(Index dim) const {
  if (dim != ambient_dim_) {
    throw DimensionError("OrthoBasis: vector of dimension " +
                         std::to_string(dim) + " against ambient dimension " +
                         std::to_string(ambient_dim_));
  }
}

bool OrthoBasis::extend(const Vector& col) {
  check_dim(col.size());
  if (!col.allFinite()) throw InputError("OrthoBasis::extend: non-finite column");
  if (full()) return true;
  const double norm = col.norm();
  if (norm == 0.0) return true;

  const Vector unit = col / norm;
  const auto q = columns();
  Vector r = unit - q * (q.transpose() * unit);
  r -= q * (q.transpose() * r);

  const double r_norm = r.norm();
  if (r_norm <= kRankTolerance * (1.0 + unit.norm())) return true;

  q_.col(rank_) = r / r_norm;
  ++rank_;
  return false;
}

Vector OrthoBasis::project(const Vector& v) const {
  check_dim(v.size());
  const auto q = columns();
  return q * (q.transpose() * v);
}

double OrthoBasis::project_norm_sq(const Vector& v) const {
  check_dim(v.size());
  if (rank_ == 0) return 0.0;
  const double norm_sq = (columns().transpose() * v).squaredNorm();
  return std::min(norm_sq, v.squaredNorm());
}

ExtendResult basis_extend(const OrthoBasis& basis, const Vector& col) {
  ExtendResult result{basis, false};
  result.absorbed = result.basis.extend(col);
  return result;
}

}  // namespace minreach
