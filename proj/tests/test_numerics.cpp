#include <doctest.h>

#include <random>

#include "ssc/errors.hpp"
#include "ssc/numerics.hpp"
#include "ssc/rng.hpp"
#include "test_helpers.hpp"

using namespace ssc;
using testing::max_abs;

namespace {

Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  return m;
}

}  // namespace

TEST_CASE("orthonormal_basis of the identity is the identity") {
  const Matrix q = orthonormal_basis(Matrix::Identity(3, 3), 1e-10);
  REQUIRE(q.cols() == 3);
  CHECK(max_abs(q - Matrix::Identity(3, 3)) < 1e-12);
}

TEST_CASE("orthonormal_basis drops a dependent column") {
  Matrix a(2, 2);
  a << 1, 2, 2, 4;
  const Matrix q = orthonormal_basis(a, 1e-10);
  REQUIRE(q.cols() == 1);
  Vector expected(2);
  expected << 1, 2;
  expected /= std::sqrt(5.0);
  CHECK(max_abs(q.col(0) - expected) < 1e-12);
}

TEST_CASE("orthonormal_basis of a random full-rank matrix") {
  const Matrix a = random_matrix(10, 4, 11);
  const Matrix q = orthonormal_basis(a, 1e-10);
  REQUIRE(q.cols() == 4);
  CHECK(max_abs(q.transpose() * q - Matrix::Identity(4, 4)) < 1e-10);
  // Same span: projecting A onto Q reproduces A.
  CHECK(max_abs(q * (q.transpose() * a) - a) < 1e-10);
}

TEST_CASE("orthonormal_basis edge cases") {
  CHECK(orthonormal_basis(Matrix::Zero(4, 3)).cols() == 0);
  CHECK_THROWS_AS(orthonormal_basis(Matrix(3, 0)), DimensionError);
}

TEST_CASE("project examples") {
  const Matrix q = Matrix::Identity(3, 1);
  Vector v(3);
  v << 1, 1, 0;
  Vector expected(3);
  expected << 1, 0, 0;
  CHECK(max_abs(project(v, q) - expected) < 1e-15);

  const Matrix q2 = orthonormal_basis(random_matrix(6, 2, 3));
  const Vector inside = q2 * Vector::Ones(2);
  CHECK(max_abs(project(inside, q2) - inside) < 1e-12);
  Vector perp = random_matrix(6, 1, 5).col(0);
  perp -= q2 * (q2.transpose() * perp);
  CHECK(project(perp, q2).norm() < 1e-12);

  CHECK_THROWS_AS(project(Vector::Ones(4), q), DimensionError);
}

TEST_CASE("project: Pythagorean identity and idempotence on random inputs") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Matrix q = orthonormal_basis(random_matrix(12, 1 + static_cast<Eigen::Index>(seed % 7), 100 + seed));
    const Vector v = random_matrix(12, 1, 200 + seed).col(0);
    const Vector pv = project(v, q);
    const double lhs = v.squaredNorm();
    const double rhs = pv.squaredNorm() + (v - pv).squaredNorm();
    CHECK(std::abs(lhs - rhs) <= 1e-9 * lhs);
    CHECK(max_abs(project(pv, q) - pv) <= 1e-10);
  }
}

TEST_CASE("least_squares examples") {
  const Vector b = random_matrix(4, 1, 7).col(0);
  CHECK(max_abs(least_squares(Matrix::Identity(4, 4), b) - b) < 1e-12);

  Matrix dup = Matrix::Zero(3, 2);
  dup(0, 0) = 1;
  dup(0, 1) = 1;
  Vector e1 = Vector::Zero(3);
  e1(0) = 1;
  const Vector c = least_squares(dup, e1);
  REQUIRE(c.size() == 2);
  CHECK(c(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(c(1) == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(least_squares(Matrix::Identity(3, 3), Vector::Ones(2)), DimensionError);
}

TEST_CASE("least_squares residual is orthogonal to the column space") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Matrix a = random_matrix(20, 5, 300 + seed);
    const Vector b = random_matrix(20, 1, 400 + seed).col(0);
    const Vector c = least_squares(a, b);
    const double scale = a.norm() * b.norm();
    CHECK((a.transpose() * (a * c - b)).norm() <= 1e-8 * scale);
  }
}

TEST_CASE("least_squares gives the minimum-norm solution for rank-deficient systems") {
  Matrix a = random_matrix(8, 3, 21);
  Matrix wide(8, 4);
  wide << a, a.col(0) + a.col(1);  // rank 3
  const Vector b = random_matrix(8, 1, 22).col(0);
  const Vector c = least_squares(wide, b);
  // Pseudoinverse oracle via the normal equations of the wide system.
  const Eigen::JacobiSVD<Matrix> svd(wide, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Vector s_inv = svd.singularValues();
  for (Eigen::Index k = 0; k < s_inv.size(); ++k) s_inv(k) = s_inv(k) > 1e-10 * s_inv(0) ? 1.0 / s_inv(k) : 0.0;
  const Vector oracle = svd.matrixV() * s_inv.asDiagonal() * svd.matrixU().transpose() * b;
  CHECK(max_abs(c - oracle) < 1e-10);
}

TEST_CASE("IncrementalBasis grows an orthonormal basis and rejects dependent columns") {
  const Matrix a = random_matrix(9, 4, 31);
  IncrementalBasis basis(9);
  for (Eigen::Index j = 0; j < 4; ++j) CHECK(basis.append(a.col(j)));
  CHECK_FALSE(basis.append(a.col(0) * 2.0 - a.col(3)));
  CHECK(basis.rank() == 4);
  const Matrix q = basis.basis();
  CHECK(max_abs(q.transpose() * q - Matrix::Identity(4, 4)) < 1e-12);

  const Vector v = random_matrix(9, 1, 32).col(0);
  const Matrix reference = orthonormal_basis(a);
  CHECK(max_abs(basis.complement(v) - (v - project(v, reference))) < 1e-12);
  CHECK_FALSE(basis.append(Vector::Zero(9)));
}
