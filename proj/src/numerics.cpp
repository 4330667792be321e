#include "ssc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ssc/errors.hpp"

namespace ssc {

namespace {

void fix_sign(Eigen::Ref<Vector> col) {
  const double peak = col.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < col.size(); ++i) {
    if (std::abs(col(i)) > 1e-12 * peak) {
      if (col(i) < 0.0) col = -col;
      return;
    }
  }
}

}  // namespace

Matrix orthonormal_basis(const Matrix& a, double rank_tol) {
  if (a.cols() == 0) throw DimensionError("orthonormal_basis: input has no columns");
  if (!(rank_tol > 0.0)) throw ConfigError("orthonormal_basis: rank_tol must be positive");
  if (a.rows() == 0 || a.isZero(0.0)) return Matrix(a.rows(), 0);

  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU);
  const Vector& s = svd.singularValues();
  const double cutoff = rank_tol * s(0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cutoff) ++rank;

  Matrix q = svd.matrixU().leftCols(rank);
  for (Eigen::Index j = 0; j < q.cols(); ++j) fix_sign(q.col(j));
  return q;
}

Vector project(const Vector& v, const Matrix& q) {
  if (v.size() != q.rows()) {
    throw DimensionError("project: vector has dimension " + std::to_string(v.size()) +
                         " but basis has " + std::to_string(q.rows()) + " rows");
  }
  return q * (q.transpose() * v);
}

Vector least_squares(const Matrix& a, const Vector& b, double rank_tol) {
  if (a.rows() != b.size()) {
    throw DimensionError("least_squares: " + std::to_string(a.rows()) + " equations but rhs of size " +
                         std::to_string(b.size()));
  }
  if (a.cols() == 0) return Vector(0);
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod;
  cod.setThreshold(rank_tol);
  cod.compute(a);
  return cod.solve(b);
}

IncrementalBasis::IncrementalBasis(Eigen::Index ambient_dim, double rank_tol)
    : q_(ambient_dim, 0), rank_tol_(rank_tol) {}

bool IncrementalBasis::append(const Vector& column) {
  if (column.size() != q_.rows()) throw DimensionError("IncrementalBasis::append: dimension mismatch");
  const double norm = column.norm();
  scale_ = std::max(scale_, norm);
  if (norm == 0.0 || rank_ == q_.rows()) return false;

  // Two passes of classical Gram-Schmidt keep the basis orthonormal to
  // working precision.
  Vector w = complement(column);
  w = complement(w);
  const double rest = w.norm();
  if (rest <= rank_tol_ * scale_) return false;

  if (rank_ == q_.cols()) q_.conservativeResize(Eigen::NoChange, std::max<Eigen::Index>(4, 2 * q_.cols()));
  q_.col(rank_) = w / rest;
  ++rank_;
  return true;
}

Vector IncrementalBasis::complement(const Vector& v) const {
  if (rank_ == 0) return v;
  const auto q = q_.leftCols(rank_);
  return v - q * (q.transpose() * v);
}

}  // namespace ssc
