#include <doctest.h>

#include <random>

#include "ssc/errors.hpp"
#include "ssc/graph.hpp"

using namespace ssc;

TEST_CASE("zero coefficients give an empty graph") {
  CoefficientMatrix c{Matrix::Zero(4, 4)};
  CHECK(build_similarity(c).weights.isZero(0.0));
}

TEST_CASE("absolute values are summed") {
  CoefficientMatrix c{Matrix::Zero(3, 3)};
  c.values(0, 1) = 0.6;
  c.values(1, 0) = -0.8;
  const SimilarityGraph g = build_similarity(c);
  CHECK(g.weights(0, 1) == doctest::Approx(1.4).epsilon(1e-15));
  CHECK(g.weights(1, 0) == g.weights(0, 1));
  CHECK(g.weights(0, 2) == 0.0);
  CHECK(g.size() == 3);
}

TEST_CASE("random coefficients: symmetric, nonnegative, zero diagonal, matching pattern") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  std::bernoulli_distribution keep(0.3);
  for (int t = 0; t < 20; ++t) {
    CoefficientMatrix c{Matrix::Zero(15, 15)};
    for (Eigen::Index j = 0; j < 15; ++j)
      for (Eigen::Index i = 0; i < 15; ++i)
        if (keep(rng)) c.values(i, j) = normal(rng);
    const SimilarityGraph g = build_similarity(c);
    CHECK(g.weights == g.weights.transpose());
    CHECK(g.weights.minCoeff() >= 0.0);
    CHECK(g.weights.diagonal().isZero(0.0));
    for (Eigen::Index i = 0; i < 15; ++i)
      for (Eigen::Index j = 0; j < 15; ++j)
        if (i != j) CHECK((g.weights(i, j) > 0.0) == (c.values(i, j) != 0.0 || c.values(j, i) != 0.0));
  }
}

TEST_CASE("non-square input is rejected") {
  CoefficientMatrix c{Matrix::Zero(3, 4)};
  CHECK_THROWS_AS(build_similarity(c), DimensionError);
}
