#pragma once

#include "ssc/gomp.hpp"

namespace ssc {

/// Symmetric nonnegative edge weights with zero diagonal.
struct SimilarityGraph {
  Matrix weights;

  Eigen::Index size() const { return weights.rows(); }
};

/// g_ij = |c_ij| + |c_ji|.
SimilarityGraph build_similarity(const CoefficientMatrix& c);

}  // namespace ssc
