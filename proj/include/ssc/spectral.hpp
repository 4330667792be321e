#pragma once

#include <vector>

#include "ssc/graph.hpp"
#include "ssc/rng.hpp"

namespace ssc {

struct ClusterLabels {
  std::vector<int> assignment;  // ids in [1, num_clusters]
  int num_clusters = 0;
};

/// I - D^{-1/2} G D^{-1/2}; zero-degree vertices get D^{-1/2} = 0.
Matrix normalized_laplacian(const SimilarityGraph& g);

/// Eigenvalues of the symmetric matrix in ascending order.
Vector sorted_eigenvalues(const Matrix& symmetric);

/// Eigenvectors of the `num_clusters` smallest eigenvalues, rows rescaled to
/// unit norm. Each eigenvector has its first significant entry positive.
Matrix spectral_embed(const Matrix& laplacian, int num_clusters);

struct KMeansResult {
  ClusterLabels labels;
  double objective = 0.0;  // within-cluster sum of squares
  std::vector<double> history;  // objective after each Lloyd assignment, best restart
};

struct KMeansOptions {
  int restarts = 20;
  int max_iterations = 300;
};

/// Lloyd iterations from k-means++ starts; lowest objective over restarts
/// wins, ties resolved by restart index.
KMeansResult kmeans_detailed(const Matrix& points, int num_clusters, Rng& rng, KMeansOptions options = {});

ClusterLabels kmeans(const Matrix& points, int num_clusters, int restarts, Rng& rng);

ClusterLabels spectral_cluster(const SimilarityGraph& g, int num_clusters, int restarts, Rng& rng);

/// argmax_k (lambda_{k+1} - lambda_k) over 1 <= k <= max_clusters.
int estimate_num_clusters(const SimilarityGraph& g, int max_clusters);

}  // namespace ssc
