#include "ssc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "ssc/errors.hpp"

namespace ssc {

TnrResult tnr(const CoefficientMatrix& c, std::span<const int> labels) {
  const Eigen::Index n = c.size();
  if (static_cast<Eigen::Index>(labels.size()) != n) throw DimensionError("tnr: label count differs from N");
  long long total = 0;
  long long intra = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (c.values(j, i) == 0.0) continue;
      ++total;
      if (labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)]) ++intra;
    }
  }
  if (total == 0) return {1.0, true};
  return {static_cast<double>(intra) / static_cast<double>(total), false};
}

double anrn(const CoefficientMatrix& c) {
  if (c.size() == 0) return 0.0;
  const auto nonzeros = (c.values.array() != 0.0).count();
  return static_cast<double>(nonzeros) / static_cast<double>(c.size());
}

std::vector<int> max_weight_assignment(const Matrix& weights) {
  // Kuhn-Munkres on costs (max - w), potentials formulation, O(n^3).
  const auto n = static_cast<int>(weights.rows());
  if (weights.cols() != n) throw DimensionError("max_weight_assignment: matrix must be square");
  if (n == 0) return {};
  const double top = weights.maxCoeff();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int row = 1; row <= n; ++row) {
    match[0] = row;
    int col0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[col0] = 1;
      const int r0 = match[col0];
      double delta = inf;
      int col1 = 0;
      for (int col = 1; col <= n; ++col) {
        if (used[col]) continue;
        const double cost = (top - weights(r0 - 1, col - 1)) - u[r0] - v[col];
        if (cost < minv[col]) {
          minv[col] = cost;
          way[col] = col0;
        }
        if (minv[col] < delta) {
          delta = minv[col];
          col1 = col;
        }
      }
      for (int col = 0; col <= n; ++col) {
        if (used[col]) {
          u[match[col]] += delta;
          v[col] -= delta;
        } else {
          minv[col] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const int col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  std::vector<int> assignment(n, -1);
  for (int col = 1; col <= n; ++col)
    if (match[col] > 0) assignment[match[col] - 1] = col - 1;
  return assignment;
}

namespace {

std::vector<int> dense_ids(std::span<const int> labels, int& count) {
  std::map<int, int> ids;
  for (int l : labels) ids.emplace(l, 0);
  int next = 0;
  for (auto& [key, id] : ids) id = next++;
  count = next;
  std::vector<int> out;
  out.reserve(labels.size());
  for (int l : labels) out.push_back(ids[l]);
  return out;
}

}  // namespace

double ccr(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size()) throw DimensionError("ccr: label vectors differ in length");
  if (truth.empty()) return 1.0;
  int kp = 0;
  int kt = 0;
  const auto pred = dense_ids(predicted, kp);
  const auto tru = dense_ids(truth, kt);
  const int k = std::max(kp, kt);

  Matrix confusion = Matrix::Zero(k, k);
  for (std::size_t i = 0; i < pred.size(); ++i) confusion(pred[i], tru[i]) += 1.0;

  double matched = 0.0;
  if (k <= 8) {
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      double hits = 0.0;
      for (int r = 0; r < k; ++r) hits += confusion(r, perm[static_cast<std::size_t>(r)]);
      matched = std::max(matched, hits);
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    const auto assignment = max_weight_assignment(confusion);
    for (int r = 0; r < k; ++r) matched += confusion(r, assignment[static_cast<std::size_t>(r)]);
  }
  return matched / static_cast<double>(truth.size());
}

double aod(const Vector& r, const Matrix& u) {
  if (r.size() != u.rows()) throw DimensionError("aod: dimension mismatch");
  const Vector parallel = project(r, u);
  const double par = parallel.norm();
  const double perp = (r - parallel).norm();
  if (par == 0.0 && perp == 0.0) return 0.0;
  return std::atan2(perp, par);
}

std::vector<double> per_neighbor_true_rate(std::span<const GompTrace> traces, std::span<const int> labels) {
  std::vector<double> hits;
  std::vector<double> runs;
  for (const auto& trace : traces) {
    const int own = labels[static_cast<std::size_t>(trace.point)];
    std::size_t k = 0;
    for (std::size_t m = 0; m < trace.kept_iterations(); ++m) {
      for (Eigen::Index j : trace.iterations[m].selected) {
        if (k >= hits.size()) {
          hits.push_back(0.0);
          runs.push_back(0.0);
        }
        runs[k] += 1.0;
        if (labels[static_cast<std::size_t>(j)] == own) hits[k] += 1.0;
        ++k;
      }
    }
  }
  for (std::size_t k = 0; k < hits.size(); ++k) hits[k] /= runs[k];
  return hits;
}

std::vector<double> mean_aod_per_index(std::span<const GompTrace> traces) {
  std::vector<double> sums;
  std::vector<double> runs;
  for (const auto& trace : traces) {
    std::size_t k = 0;
    for (std::size_t m = 1; m <= trace.kept_iterations(); ++m) {
      const auto& selecting = trace.selecting_residual(m);
      if (!selecting.aod) throw ConfigError("mean_aod_per_index: trace lacks AoD instrumentation");
      for (std::size_t s = 0; s < trace.iterations[m - 1].selected.size(); ++s) {
        if (k >= sums.size()) {
          sums.push_back(0.0);
          runs.push_back(0.0);
        }
        sums[k] += *selecting.aod;
        runs[k] += 1.0;
        ++k;
      }
    }
  }
  for (std::size_t k = 0; k < sums.size(); ++k) sums[k] /= runs[k];
  return sums;
}

}  // namespace ssc
