#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "ssc/datagen.hpp"
#include "ssc/numerics.hpp"

namespace ssc {

/// When a per-point regression stops.
struct StopPolicy {
  enum class Mode { FixedIterations, ResidualRatio };

  Mode mode = Mode::ResidualRatio;
  int p = 1;                 // neighbors selected per iteration
  int fixed_iterations = 0;  // M, used by FixedIterations
  /// Iteration cap; 0 selects ceil(min(n, N-1) / p).
  int max_iters_safeguard = 0;
  /// Halt once ||r|| <= residual_floor * ||y_i||.
  double residual_floor = 1e-10;

  static StopPolicy fixed(int iterations, int p);
  static StopPolicy ratio(int p);

  /// Throws ConfigError when a field is out of range.
  void validate() const;
};

enum class HaltReason { RatioRule, FixedM, ResidualFloor, Safeguard, CandidatesExhausted };

std::string_view to_string(HaltReason reason);

/// State of the residual after one iteration.
struct IterationRecord {
  std::vector<Eigen::Index> selected;  // by descending |<y_j, r_{m-1}>|
  double residual_norm = 0.0;          // ||r_m||
  double step_norm = 0.0;              // ||r_{m-1} - r_m||
  // Populated only when a ground-truth basis is supplied.
  std::optional<double> parallel_norm;
  std::optional<double> perpendicular_norm;
  std::optional<double> aod;
};

/// Iteration history of one regression.
struct GompTrace {
  Eigen::Index point = 0;
  IterationRecord initial;  // r_0 = y_i, nothing selected
  std::vector<IterationRecord> iterations;
  HaltReason halted_by = HaltReason::FixedM;
  bool discarded_last_batch = false;
  /// The ratio rule fired on the first iteration and its batch was kept.
  bool first_batch_forced = false;

  std::size_t kept_iterations() const { return iterations.size() - (discarded_last_batch ? 1 : 0); }
  /// Residual used to select batch m (1-based).
  const IterationRecord& selecting_residual(std::size_t m) const {
    return m == 1 ? initial : iterations.at(m - 2);
  }
};

/// Representation of one point by the others.
struct SparseRep {
  std::vector<Eigen::Index> support;  // in selection order, never the point itself
  Vector coeffs;                      // least-squares coefficients over support
  Vector normalized_full;             // length N, unit norm or all zero
};

/// N x N matrix whose column i represents point i.
struct CoefficientMatrix {
  Matrix values;

  Eigen::Index size() const { return values.cols(); }
};

/// Ratio rule: true when ||r_curr|| / ||r_prev|| >= 1 - sqrt(p/n).
bool stopping_check(double r_prev_norm, double r_curr_norm, int p, Eigen::Index n);

/// Equivalent test on the normalized step ||r_{m-1} - r_m|| / ||r_{m-1}||:
/// true when it is <= sqrt(2 sqrt(p/n) - p/n).
bool stopping_check_equiv(double r_tilde_norm, int p, Eigen::Index n);

/// Greedy multi-neighbor regression of column `i` of `columns` (n x N, one
/// point per column) on the remaining columns.
std::pair<SparseRep, GompTrace> gomp_select(const Matrix& columns, Eigen::Index i, const StopPolicy& policy,
                                            const Matrix* truth_basis = nullptr);

std::pair<SparseRep, GompTrace> gomp_select(const DataSet& data, Eigen::Index i, const StopPolicy& policy,
                                            const Matrix* truth_basis = nullptr);

struct RegressionOutput {
  CoefficientMatrix coefficients;
  std::vector<GompTrace> traces;
};

/// Runs gomp_select for every point. When `truth` is given, point i's trace
/// is instrumented with basis `truth->bases[labels[i] - 1]`.
RegressionOutput regress_all(const DataSet& data, const StopPolicy& policy, unsigned threads = 1,
                             const SubspaceModel* truth = nullptr);

CoefficientMatrix sparse_representation(const DataSet& data, const StopPolicy& policy, unsigned threads = 1);

/// Copy of `data` whose points are scaled to unit norm (zero rows untouched).
DataSet normalize_points(const DataSet& data);

}  // namespace ssc
