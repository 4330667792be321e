#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ssc/gomp.hpp"
#include "ssc/spectral.hpp"

namespace ssc {

struct TnrResult {
  double value = 1.0;
  bool vacuous = false;  // no nonzeros at all; value reported as 1
};

/// Fraction of nonzero coefficients linking points with equal labels.
TnrResult tnr(const CoefficientMatrix& c, std::span<const int> labels);

/// Mean number of nonzero coefficients per column.
double anrn(const CoefficientMatrix& c);

/// Best-match fraction of agreeing labels. Exhaustive over permutations
/// when both label sets have at most 8 clusters, Hungarian assignment
/// otherwise; unmatched clusters count as wrong.
double ccr(std::span<const int> predicted, std::span<const int> truth);

/// Maximum-weight one-to-one matching on a nonnegative square matrix.
/// Returns column index per row.
std::vector<int> max_weight_assignment(const Matrix& weights);

/// Angle between r and span(u): atan2(||r_perp||, ||r_par||); 0 for r = 0.
double aod(const Vector& r, const Matrix& u);

/// Fraction of runs whose k-th kept neighbor (0-based k) shares the
/// regressed point's label, over runs with at least k+1 neighbors.
std::vector<double> per_neighbor_true_rate(std::span<const GompTrace> traces, std::span<const int> labels);

/// Mean AoD of the residual that selected the k-th kept neighbor.
/// Traces must carry AoD instrumentation.
std::vector<double> mean_aod_per_index(std::span<const GompTrace> traces);

struct MetricsReport {
  std::optional<double> tnr;
  bool tnr_vacuous = false;
  double anrn = 0.0;
  std::optional<double> ccr;
  std::vector<double> per_neighbor_true_rate;
  std::vector<double> mean_aod_per_index;
};

}  // namespace ssc
