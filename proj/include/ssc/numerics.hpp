#pragma once

#include <Eigen/Dense>

namespace ssc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative rank cut-off used when none is given.
inline constexpr double kDefaultRankTol = 1e-10;

/// Orthonormal basis of the numerical column space of `a`.
///
/// Directions whose singular value falls below `rank_tol` times the largest
/// singular value are dropped. An all-zero input yields a 0-column matrix.
/// Each returned column has its first significant entry positive.
Matrix orthonormal_basis(const Matrix& a, double rank_tol = kDefaultRankTol);

/// Orthogonal projection of `v` onto span(q); `q` must have orthonormal columns.
Vector project(const Vector& v, const Matrix& q);

/// Minimum-norm minimizer of ||a c - b||_2.
Vector least_squares(const Matrix& a, const Vector& b, double rank_tol = kDefaultRankTol);

/// Orthonormal basis grown one column at a time.
///
/// Used for the greedy residual updates: columns that are numerically
/// dependent on the current span are rejected.
class IncrementalBasis {
 public:
  explicit IncrementalBasis(Eigen::Index ambient_dim, double rank_tol = kDefaultRankTol);

  /// Adds `column` to the span. Returns false if it added no new direction.
  bool append(const Vector& column);

  /// v minus its projection onto the current span.
  Vector complement(const Vector& v) const;

  Eigen::Index rank() const { return rank_; }
  Eigen::Index ambient_dim() const { return q_.rows(); }
  /// The orthonormal columns accumulated so far.
  auto basis() const { return q_.leftCols(rank_); }

 private:
  Matrix q_;
  Eigen::Index rank_ = 0;
  double rank_tol_;
  double scale_ = 0.0;
};

}  // namespace ssc
