#include "ssc/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ssc/errors.hpp"

namespace ssc {

double affinity(const Matrix& u_k, const Matrix& u_l) {
  if (u_k.cols() == 0 || u_l.cols() == 0) throw DimensionError("affinity: zero-dimensional subspace");
  if (u_k.rows() != u_l.rows()) throw DimensionError("affinity: ambient dimensions differ");
  const auto d = std::min(u_k.cols(), u_l.cols());
  // Both orientations are summed so swapping the arguments only swaps the
  // operands of one commutative addition: the result is exactly symmetric.
  const double both = (u_k.transpose() * u_l).squaredNorm() + (u_l.transpose() * u_k).squaredNorm();
  return std::sqrt(0.5 * both / static_cast<double>(d));
}

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = normal(rng);
  return g;
}

namespace {

Matrix random_orthonormal_frame(Eigen::Index n, Eigen::Index k, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(n, k, rng));
  return qr.householderQ() * Matrix::Identity(n, k);
}

}  // namespace

SubspaceModel make_equiaffinity_subspaces(Eigen::Index n, Eigen::Index d, std::size_t num_subspaces, double rho,
                                          Rng& rng) {
  if (d < 1 || num_subspaces < 1) throw ConfigError("make_equiaffinity_subspaces: d and L must be >= 1");
  if (!(rho >= 0.0 && rho <= 1.0)) throw ConfigError("make_equiaffinity_subspaces: rho must lie in [0, 1]");
  const auto needed = d * static_cast<Eigen::Index>(num_subspaces + 1);
  if (n < needed) {
    throw ConfigError("make_equiaffinity_subspaces: ambient dimension n=" + std::to_string(n) +
                      " is too small; the construction needs n >= d(L+1) = " + std::to_string(needed));
  }

  // Columns [0, d) are the shared directions e_j; block k+1 holds f_k^(j).
  const Matrix frame = random_orthonormal_frame(n, needed, rng);
  const double c = std::sqrt(rho);
  const double s = std::sqrt(1.0 - rho);

  SubspaceModel model;
  model.ambient_dim = n;
  for (std::size_t k = 0; k < num_subspaces; ++k) {
    const auto offset = d * static_cast<Eigen::Index>(k + 1);
    model.bases.push_back(c * frame.leftCols(d) + s * frame.middleCols(offset, d));
  }
  return model;
}

SubspaceModel make_orthogonal_subspaces(Eigen::Index n, Eigen::Index d, std::size_t num_subspaces, Rng& rng) {
  if (d < 1 || num_subspaces < 1) throw ConfigError("make_orthogonal_subspaces: d and L must be >= 1");
  const auto needed = d * static_cast<Eigen::Index>(num_subspaces);
  if (n < needed) {
    throw ConfigError("make_orthogonal_subspaces: need n >= dL = " + std::to_string(needed));
  }
  const Matrix frame = random_orthonormal_frame(n, needed, rng);
  SubspaceModel model;
  model.ambient_dim = n;
  for (std::size_t k = 0; k < num_subspaces; ++k)
    model.bases.push_back(frame.middleCols(d * static_cast<Eigen::Index>(k), d));
  return model;
}

DataSet sample_points(const SubspaceModel& model, const std::vector<Eigen::Index>& counts, Rng& rng) {
  if (counts.size() != model.num_subspaces())
    throw ConfigError("sample_points: need one count per subspace");
  Eigen::Index total = 0;
  for (auto c : counts) {
    if (c <= 0) throw ConfigError("sample_points: every cluster count must be positive");
    total += c;
  }

  const std::uint64_t base = rng();
  DataSet ds;
  ds.points.resize(total, model.ambient_dim);
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(total));

  Eigen::Index row = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    Rng stream(stream_seed(base, {k}));
    const Matrix& u = model.bases[k];
    const Matrix coeffs = gaussian_matrix(u.cols(), counts[k], stream);
    for (Eigen::Index j = 0; j < counts[k]; ++j) {
      Vector a = coeffs.col(j);
      double norm = a.norm();
      while (norm == 0.0) {
        a = gaussian_matrix(u.cols(), 1, stream).col(0);
        norm = a.norm();
      }
      Vector x = u * (a / norm);
      ds.points.row(row++) = (x / x.norm()).transpose();
      labels.push_back(static_cast<int>(k) + 1);
    }
  }
  ds.noiseless = ds.points;
  ds.labels = std::move(labels);
  ds.sigma = 0.0;
  return ds;
}

DataSet add_noise(const DataSet& ds, double sigma, Rng& rng) {
  if (!(sigma >= 0.0)) throw ConfigError("add_noise: sigma must be non-negative");
  DataSet out = ds;
  const Matrix& clean = ds.noiseless ? *ds.noiseless : ds.points;
  out.noiseless = clean;
  out.sigma = sigma;
  if (sigma == 0.0) {
    out.points = clean;
    return out;
  }
  const double scale = sigma / std::sqrt(static_cast<double>(clean.cols()));
  // Row-major draw order: point by point.
  Matrix noise = gaussian_matrix(clean.cols(), clean.rows(), rng).transpose();
  out.points = clean + scale * noise;
  return out;
}

}  // namespace ssc
