#include "ssc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ssc/errors.hpp"

namespace ssc {

Matrix normalized_laplacian(const SimilarityGraph& g) {
  const Eigen::Index n = g.size();
  if (g.weights.cols() != n) throw DimensionError("normalized_laplacian: graph must be square");
  Vector inv_sqrt_deg(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double deg = g.weights.row(i).sum();
    inv_sqrt_deg(i) = deg > 0.0 ? 1.0 / std::sqrt(deg) : 0.0;
  }
  Matrix lap = -(inv_sqrt_deg.asDiagonal() * g.weights * inv_sqrt_deg.asDiagonal());
  lap.diagonal().array() += 1.0;
  // Exact symmetry regardless of rounding in the scaling.
  return 0.5 * (lap + lap.transpose());
}

Vector sorted_eigenvalues(const Matrix& symmetric) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("eigendecomposition did not converge");
  return solver.eigenvalues();
}

Matrix spectral_embed(const Matrix& laplacian, int num_clusters) {
  const Eigen::Index n = laplacian.rows();
  if (num_clusters < 1 || num_clusters > n)
    throw ConfigError("spectral_embed: number of clusters must lie in [1, N]");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(laplacian);
  if (solver.info() != Eigen::Success) throw NumericalError("spectral_embed: eigendecomposition did not converge");

  Matrix v = solver.eigenvectors().leftCols(num_clusters);
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    auto col = v.col(j);
    const double peak = col.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(col(i)) > 1e-12 * peak) {
        if (col(i) < 0.0) col = -col;
        break;
      }
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const double norm = v.row(i).norm();
    if (norm > 1e-12) v.row(i) /= norm;
  }
  return v;
}

namespace {

struct Assignment {
  std::vector<int> cluster;
  Vector dist2;  // squared distance to assigned centroid
  double objective = 0.0;
};

Assignment assign(const Matrix& points, const Matrix& centroids) {
  const Eigen::Index n = points.rows();
  Assignment a;
  a.cluster.assign(static_cast<std::size_t>(n), 0);
  a.dist2.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
      const double d = (points.row(i) - centroids.row(c)).squaredNorm();
      if (d < best) {
        best = d;
        arg = static_cast<int>(c);
      }
    }
    a.cluster[static_cast<std::size_t>(i)] = arg;
    a.dist2(i) = best;
    a.objective += best;
  }
  return a;
}

Matrix plus_plus_init(const Matrix& points, int k, Rng& rng) {
  const Eigen::Index n = points.rows();
  Matrix centroids(k, points.cols());
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  centroids.row(0) = points.row(pick(rng));
  Vector d2 = (points.rowwise() - centroids.row(0)).rowwise().squaredNorm();
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Eigen::Index chosen = 0;
    if (total > 0.0) {
      double target = unif(rng) * total;
      chosen = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        target -= d2(i);
        if (target < 0.0 && d2(i) > 0.0) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = pick(rng);
    }
    centroids.row(c) = points.row(chosen);
    d2 = d2.cwiseMin((points.rowwise() - centroids.row(c)).rowwise().squaredNorm());
  }
  return centroids;
}

KMeansResult lloyd(const Matrix& points, int k, Rng& rng, int max_iterations) {
  const Eigen::Index n = points.rows();
  Matrix centroids = plus_plus_init(points, k, rng);
  Assignment current = assign(points, centroids);
  KMeansResult result;
  result.history.push_back(current.objective);

  for (int iter = 0; iter < max_iterations; ++iter) {
    Matrix sums = Matrix::Zero(k, points.cols());
    std::vector<Eigen::Index> sizes(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const int c = current.cluster[static_cast<std::size_t>(i)];
      sums.row(c) += points.row(i);
      ++sizes[static_cast<std::size_t>(c)];
    }
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    for (int c = 0; c < k; ++c) {
      if (sizes[static_cast<std::size_t>(c)] > 0) {
        centroids.row(c) = sums.row(c) / static_cast<double>(sizes[static_cast<std::size_t>(c)]);
        continue;
      }
      // Empty cluster: reseed from the point farthest from its centroid.
      Eigen::Index far = 0;
      double far_d = -1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!used[static_cast<std::size_t>(i)] && current.dist2(i) > far_d) {
          far_d = current.dist2(i);
          far = i;
        }
      }
      used[static_cast<std::size_t>(far)] = 1;
      centroids.row(c) = points.row(far);
    }
    Assignment next = assign(points, centroids);
    const bool stable = next.cluster == current.cluster;
    current = std::move(next);
    result.history.push_back(current.objective);
    if (stable) break;
  }

  result.objective = current.objective;
  result.labels.num_clusters = k;
  result.labels.assignment.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    result.labels.assignment[static_cast<std::size_t>(i)] = current.cluster[static_cast<std::size_t>(i)] + 1;
  return result;
}

// Relabel so clusters are numbered by first appearance; ids stay in [1, k].
void canonicalize(ClusterLabels& labels) {
  std::vector<int> remap(static_cast<std::size_t>(labels.num_clusters) + 1, 0);
  int next = 1;
  for (int& id : labels.assignment) {
    auto& slot = remap[static_cast<std::size_t>(id)];
    if (slot == 0) slot = next++;
    id = slot;
  }
  labels.num_clusters = next - 1;
}

}  // namespace

KMeansResult kmeans_detailed(const Matrix& points, int num_clusters, Rng& rng, KMeansOptions options) {
  const Eigen::Index n = points.rows();
  if (num_clusters < 1 || num_clusters > n) throw ConfigError("kmeans: number of clusters must lie in [1, N]");
  if (options.restarts < 1) throw ConfigError("kmeans: restarts must be >= 1");

  const std::uint64_t base = rng();
  KMeansResult best;
  best.objective = std::numeric_limits<double>::infinity();
  for (int r = 0; r < options.restarts; ++r) {
    Rng stream(stream_seed(base, {static_cast<std::uint64_t>(r)}));
    KMeansResult run = lloyd(points, num_clusters, stream, options.max_iterations);
    if (run.objective < best.objective) best = std::move(run);
  }
  canonicalize(best.labels);
  return best;
}

ClusterLabels kmeans(const Matrix& points, int num_clusters, int restarts, Rng& rng) {
  KMeansOptions options;
  options.restarts = restarts;
  return kmeans_detailed(points, num_clusters, rng, options).labels;
}

ClusterLabels spectral_cluster(const SimilarityGraph& g, int num_clusters, int restarts, Rng& rng) {
  const Matrix embedding = spectral_embed(normalized_laplacian(g), num_clusters);
  return kmeans(embedding, num_clusters, restarts, rng);
}

int estimate_num_clusters(const SimilarityGraph& g, int max_clusters) {
  const Vector ev = sorted_eigenvalues(normalized_laplacian(g));
  const auto n = static_cast<int>(ev.size());
  if (n == 0) throw ConfigError("estimate_num_clusters: empty graph");
  const int top = std::min(max_clusters, n - 1);
  if (top < 1) return 1;
  int best = 1;
  double gap = -std::numeric_limits<double>::infinity();
  for (int k = 1; k <= top; ++k) {
    const double g_k = ev(k) - ev(k - 1);
    if (g_k > gap) {
      gap = g_k;
      best = k;
    }
  }
  return best;
}

}  // namespace ssc
