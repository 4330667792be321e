#pragma once

#include <cstdint>
#include <optional>

#include "ssc/gomp.hpp"
#include "ssc/graph.hpp"
#include "ssc/metrics.hpp"
#include "ssc/spectral.hpp"

namespace ssc {

struct ClusteringOptions {
  StopPolicy policy;
  int num_clusters = 0;  // 0: estimate from the eigengap
  int max_clusters = 10; // search range when estimating
  int restarts = 20;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct ClusteringResult {
  CoefficientMatrix coefficients;
  SimilarityGraph graph;
  ClusterLabels labels;
  MetricsReport metrics;  // TNR and CCR only when data carries labels
};

/// Full pipeline: per-point regressions, similarity graph, spectral clustering.
ClusteringResult cluster_dataset(const DataSet& data, const ClusteringOptions& options);

}  // namespace ssc
