#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ssc/rng.hpp"

namespace ssc::bounds {

/// Symbols of the recovery-rate bounds.
struct BoundParams {
  double n = 0;             // ambient dimension
  double N = 0;             // data size
  double cluster_size = 0;  // |Y_L|
  int d_L = 0;              // subspace dimension
  double sigma = 0.0;
  double tau = 0.5;         // separation slack in (0, 1)
  int p = 1;
  int M = 1;
  double c_const = 1.0;     // unknown constant of the noise concentration step
  std::vector<double> affinities;  // aff(S_k, S_L), k != L

  /// Throws ConfigError naming the violated constraint.
  void validate() const;
};

/// A raw bound value; vacuous when <= 0.
struct BoundValue {
  double value = 0.0;
  bool vacuous = false;
};

/// Volume of the unit ball in R^d.
double unit_ball_volume(int d);

enum class SeparationForm {
  AsStated,     // 9 sqrt(3) d_L (1 + sigma)
  ProofVariant  // 3 sqrt(3 d_L) (3 + 3 sigma)
};

struct SeparationCheck {
  bool pass = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Subspace separation condition; throws NumericalError for sigma >= 2/3.
SeparationCheck assumption3_check(const BoundParams& params, SeparationForm form = SeparationForm::AsStated);

/// Per-iteration loss J(k_m), 0 <= k_m <= p.
double j_term(int k_m, const BoundParams& params);

/// Iteration-wise recovery bound for the sequence k_seq (length M).
BoundValue iteration_bound(const BoundParams& params, const std::vector<int>& k_seq);

/// OMP (p = 1) specialization with every detected neighbor true, in its
/// closed form; uses params.M and ignores params.p.
BoundValue omp_all_true_bound(const BoundParams& params);

/// r copies of q+1 followed by M-r copies of q, where k_t = M q + r.
std::vector<int> optimal_k_sequence(int k_t, int M, int p);

/// Global recovery bound for at least k_t true neighbors in M iterations,
/// evaluated from its closed form.
BoundValue global_bound(const BoundParams& params, int k_t);

/// Closed form for GOMP demanding k true neighbors per iteration (k_t = kM).
BoundValue gomp_comparison_bound(const BoundParams& params, int k);

/// Closed form for OMP recovering the same pM neighbors, kM of them true.
BoundValue omp_comparison_bound(const BoundParams& params, int k);

/// Smallest positive d_L - p r over integers r.
int halting_remainder(int d_L, int p);

/// Probability that the ratio rule halts GOMP at iteration floor(d_L/p)+1.
BoundValue halting_bound(const BoundParams& params);

struct KSequenceOptimum {
  std::vector<int> sequence;
  double objective = 0.0;  // sum of j_term
};

/// Exhaustive minimization of sum J(k_m) subject to sum k_m = k_t.
/// Requires (p+1)^M <= 1e7.
KSequenceOptimum brute_force_k_min(int k_t, int M, int p, const BoundParams& params);

struct ConcentrationEstimate {
  double emp_a = 0.0;    // Pr{|a^T b| > eps ||b||}
  double bound_a = 0.0;  // 2 exp(-m eps^2 / 2)
  double emp_b = 0.0;    // Pr{|a^T b| < eps ||b|| / sqrt(m)}
  double bound_b = 0.0;  // sqrt(2/pi) eps
  std::uint64_t trials = 0;
};

/// Monte Carlo estimate with a uniform on the unit sphere of R^m and b an
/// independent standard Gaussian. Chunks of trials use independent streams
/// and are reduced in chunk order, so the result does not depend on threads.
ConcentrationEstimate mc_concentration(int m, double eps, std::uint64_t trials, Rng& rng, unsigned threads = 1);

}  // namespace ssc::bounds
