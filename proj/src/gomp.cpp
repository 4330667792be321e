#include "ssc/gomp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ssc/errors.hpp"
#include "ssc/parallel.hpp"

namespace ssc {

StopPolicy StopPolicy::fixed(int iterations, int p) {
  StopPolicy policy;
  policy.mode = Mode::FixedIterations;
  policy.fixed_iterations = iterations;
  policy.p = p;
  return policy;
}

StopPolicy StopPolicy::ratio(int p) {
  StopPolicy policy;
  policy.mode = Mode::ResidualRatio;
  policy.p = p;
  return policy;
}

void StopPolicy::validate() const {
  if (p < 1) throw ConfigError("stop policy: p must be >= 1");
  if (mode == Mode::FixedIterations && fixed_iterations < 1)
    throw ConfigError("stop policy: fixed iteration count M must be >= 1");
  if (max_iters_safeguard < 0) throw ConfigError("stop policy: max_iters_safeguard must be >= 1 (or 0 for auto)");
  if (!(residual_floor >= 0.0)) throw ConfigError("stop policy: residual_floor must be >= 0");
}

std::string_view to_string(HaltReason reason) {
  switch (reason) {
    case HaltReason::RatioRule: return "ratio_rule";
    case HaltReason::FixedM: return "fixed_M";
    case HaltReason::ResidualFloor: return "residual_floor";
    case HaltReason::Safeguard: return "safeguard";
    case HaltReason::CandidatesExhausted: return "candidates_exhausted";
  }
  return "unknown";
}

bool stopping_check(double r_prev_norm, double r_curr_norm, int p, Eigen::Index n) {
  if (r_prev_norm <= 0.0) return true;
  const double threshold = 1.0 - std::sqrt(static_cast<double>(p) / static_cast<double>(n));
  return r_curr_norm / r_prev_norm >= threshold;
}

bool stopping_check_equiv(double r_tilde_norm, int p, Eigen::Index n) {
  // Threshold 1 covers the whole valid range; rounding must not push a
  // depleted residual (r_tilde = 1 + ulp) past it.
  if (p >= n) return true;
  const double ratio = static_cast<double>(p) / static_cast<double>(n);
  return r_tilde_norm <= std::sqrt(2.0 * std::sqrt(ratio) - ratio);
}

namespace {

void instrument(IterationRecord& rec, const Vector& r, const Matrix* truth) {
  if (!truth) return;
  const Vector parallel = truth->transpose() * r;
  const double par = parallel.norm();
  const double perp = (r - *truth * parallel).norm();
  rec.parallel_norm = par;
  rec.perpendicular_norm = perp;
  rec.aod = (par == 0.0 && perp == 0.0) ? 0.0 : std::atan2(perp, par);
}

}  // namespace

std::pair<SparseRep, GompTrace> gomp_select(const Matrix& columns, Eigen::Index i, const StopPolicy& policy,
                                            const Matrix* truth_basis) {
  policy.validate();
  const Eigen::Index n = columns.rows();
  const Eigen::Index count = columns.cols();
  if (count < 2) throw ConfigError("gomp_select: need at least two points");
  if (i < 0 || i >= count) throw DimensionError("gomp_select: point index out of range");
  if (truth_basis && truth_basis->rows() != n) throw DimensionError("gomp_select: truth basis has wrong ambient dimension");

  const int p = policy.p;
  const int max_iters = policy.max_iters_safeguard > 0
                            ? policy.max_iters_safeguard
                            : static_cast<int>((std::min(n, count - 1) + p - 1) / p);

  const Vector y = columns.col(i);
  const double y_norm = y.norm();
  const double floor = policy.residual_floor * y_norm;

  GompTrace trace;
  trace.point = i;
  trace.initial.residual_norm = y_norm;
  instrument(trace.initial, y, truth_basis);

  std::vector<char> taken(static_cast<std::size_t>(count), 0);
  taken[static_cast<std::size_t>(i)] = 1;
  Eigen::Index remaining = count - 1;

  IncrementalBasis basis(n);
  Vector r = y;
  double r_norm = y_norm;

  if (y_norm == 0.0) {
    trace.halted_by = HaltReason::ResidualFloor;
  } else {
    std::vector<Eigen::Index> order;
    for (int m = 1;; ++m) {
      const Vector scores = columns.transpose() * r;

      order.clear();
      for (Eigen::Index j = 0; j < count; ++j)
        if (!taken[static_cast<std::size_t>(j)]) order.push_back(j);
      const auto batch = std::min<std::size_t>(order.size(), static_cast<std::size_t>(p));
      std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(batch), order.end(),
                        [&](Eigen::Index a, Eigen::Index b) {
                          const double sa = std::abs(scores(a));
                          const double sb = std::abs(scores(b));
                          return sa > sb || (sa == sb && a < b);
                        });
      order.resize(batch);

      IterationRecord rec;
      rec.selected = order;
      for (Eigen::Index j : order) {
        taken[static_cast<std::size_t>(j)] = 1;
        basis.append(columns.col(j));
      }
      remaining -= static_cast<Eigen::Index>(batch);

      const Vector r_next = basis.complement(r);
      rec.residual_norm = r_next.norm();
      rec.step_norm = (r - r_next).norm();
      instrument(rec, r_next, truth_basis);
      trace.iterations.push_back(std::move(rec));
      const double next_norm = trace.iterations.back().residual_norm;

      if (next_norm <= floor) {
        trace.halted_by = HaltReason::ResidualFloor;
        break;
      }
      if (policy.mode == StopPolicy::Mode::ResidualRatio && stopping_check(r_norm, next_norm, p, n)) {
        trace.halted_by = HaltReason::RatioRule;
        // An empty support would leave the point isolated in the graph.
        if (m == 1) {
          trace.first_batch_forced = true;
        } else {
          trace.discarded_last_batch = true;
        }
        break;
      }
      if (policy.mode == StopPolicy::Mode::FixedIterations && m >= policy.fixed_iterations) {
        trace.halted_by = HaltReason::FixedM;
        break;
      }
      if (remaining == 0) {
        trace.halted_by = HaltReason::CandidatesExhausted;
        break;
      }
      if (m >= max_iters) {
        trace.halted_by = HaltReason::Safeguard;
        break;
      }
      r = r_next;
      r_norm = next_norm;
    }
  }

  SparseRep rep;
  const std::size_t kept = trace.kept_iterations();
  for (std::size_t m = 0; m < kept; ++m)
    rep.support.insert(rep.support.end(), trace.iterations[m].selected.begin(), trace.iterations[m].selected.end());

  Matrix selected(n, static_cast<Eigen::Index>(rep.support.size()));
  for (std::size_t k = 0; k < rep.support.size(); ++k)
    selected.col(static_cast<Eigen::Index>(k)) = columns.col(rep.support[k]);
  rep.coeffs = least_squares(selected, y);

  rep.normalized_full = Vector::Zero(count);
  const double c_norm = rep.coeffs.norm();
  if (c_norm > 0.0) {
    for (std::size_t k = 0; k < rep.support.size(); ++k)
      rep.normalized_full(rep.support[k]) = rep.coeffs(static_cast<Eigen::Index>(k)) / c_norm;
  }
  return {std::move(rep), std::move(trace)};
}

std::pair<SparseRep, GompTrace> gomp_select(const DataSet& data, Eigen::Index i, const StopPolicy& policy,
                                            const Matrix* truth_basis) {
  const Matrix columns = data.points.transpose();
  return gomp_select(columns, i, policy, truth_basis);
}

RegressionOutput regress_all(const DataSet& data, const StopPolicy& policy, unsigned threads,
                             const SubspaceModel* truth) {
  policy.validate();
  const Eigen::Index count = data.size();
  if (count < 2) throw ConfigError("sparse_representation: need at least two points");
  if (truth && !data.labels) throw ConfigError("regress_all: ground-truth bases need labels");

  const Matrix columns = data.points.transpose();
  RegressionOutput out;
  out.coefficients.values = Matrix::Zero(count, count);
  out.traces.resize(static_cast<std::size_t>(count));

  parallel_for(static_cast<std::size_t>(count), threads, [&](std::size_t idx) {
    const auto i = static_cast<Eigen::Index>(idx);
    const Matrix* basis = nullptr;
    if (truth) basis = &truth->bases.at(static_cast<std::size_t>((*data.labels)[idx] - 1));
    auto [rep, trace] = gomp_select(columns, i, policy, basis);
    out.coefficients.values.col(i) = rep.normalized_full;
    out.traces[idx] = std::move(trace);
  });
  return out;
}

CoefficientMatrix sparse_representation(const DataSet& data, const StopPolicy& policy, unsigned threads) {
  return regress_all(data, policy, threads).coefficients;
}

DataSet normalize_points(const DataSet& data) {
  DataSet out = data;
  for (Eigen::Index i = 0; i < out.points.rows(); ++i) {
    const double norm = out.points.row(i).norm();
    if (norm > 0.0) out.points.row(i) /= norm;
  }
  return out;
}

}  // namespace ssc
