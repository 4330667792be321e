#include "ssc/graph.hpp"

#include "ssc/errors.hpp"

namespace ssc {

SimilarityGraph build_similarity(const CoefficientMatrix& c) {
  if (c.values.rows() != c.values.cols()) throw DimensionError("build_similarity: coefficient matrix must be square");
  const Matrix a = c.values.cwiseAbs();
  SimilarityGraph g;
  g.weights = a + a.transpose();
  g.weights.diagonal().setZero();
  return g;
}

}  // namespace ssc
