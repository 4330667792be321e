#pragma once

#include <optional>
#include <vector>

#include "ssc/numerics.hpp"
#include "ssc/rng.hpp"

namespace ssc {

/// Ground-truth union of linear subspaces in R^n.
struct SubspaceModel {
  Eigen::Index ambient_dim = 0;
  std::vector<Matrix> bases;  // each n x d_k, orthonormal columns

  std::size_t num_subspaces() const { return bases.size(); }
  Eigen::Index dim(std::size_t k) const { return bases.at(k).cols(); }
};

/// N observed points, one per row, with optional ground truth.
struct DataSet {
  Matrix points;                    // N x n
  std::optional<std::vector<int>> labels;  // 1-based cluster ids
  std::optional<Matrix> noiseless;  // N x n, unit-norm rows
  double sigma = 0.0;

  Eigen::Index size() const { return points.rows(); }
  Eigen::Index ambient_dim() const { return points.cols(); }
};

/// ||U_k^T U_l||_F / sqrt(min(d_k, d_l)).
double affinity(const Matrix& u_k, const Matrix& u_l);

/// L subspaces of dimension d in R^n whose pairwise affinities all equal rho.
///
/// Basis vector j of subspace k is cos(a) e_j + sin(a) f_k^(j) with
/// cos^2(a) = rho, where {e_j} and {f_k^(j)} are d(L+1) random orthonormal
/// directions. Requires n >= d(L+1).
SubspaceModel make_equiaffinity_subspaces(Eigen::Index n, Eigen::Index d, std::size_t num_subspaces, double rho,
                                          Rng& rng);

/// L mutually orthogonal random subspaces of dimension d (needs n >= dL).
SubspaceModel make_orthogonal_subspaces(Eigen::Index n, Eigen::Index d, std::size_t num_subspaces, Rng& rng);

/// Points drawn uniformly from the unit sphere of each subspace.
///
/// Cluster k uses its own generator stream derived from one draw of `rng`
/// and k, so clusters can be generated independently.
DataSet sample_points(const SubspaceModel& model, const std::vector<Eigen::Index>& counts, Rng& rng);

/// Adds i.i.d. N(0, sigma^2/n I) noise to the noiseless points.
DataSet add_noise(const DataSet& ds, double sigma, Rng& rng);

/// Standard normal matrix.
Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

}  // namespace ssc
