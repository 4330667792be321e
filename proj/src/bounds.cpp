#include "ssc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ssc/errors.hpp"
#include "ssc/parallel.hpp"

namespace ssc::bounds {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log of (num / den)^e with (x/0)^0 = 1 and 0^e = 0 for e > 0.
double log_power_ratio(double num, double den, double e) {
  if (e == 0.0) return 0.0;
  if (num == 0.0) return e > 0.0 ? kNegInf : std::numeric_limits<double>::infinity();
  return e * (std::log(num) - std::log(den));
}

double log_noise_ball_term(int dim, double sigma) {
  // v(dim) (sigma / sqrt(pi))^dim; the pi factors cancel.
  if (sigma == 0.0) return kNegInf;
  return -std::lgamma(0.5 * dim + 1.0) + dim * std::log(sigma);
}

double log_N_exponent_power(const BoundParams& q) {
  // log N^{8 log N / d_L}
  const double log_n = std::log(q.N);
  return 8.0 * log_n * log_n / q.d_L;
}

double base_terms(const BoundParams& q, int ball_dim) {
  if (ball_dim <= 0) {
    throw ConfigError("bound: the noise-ball dimension d_L - p(M-1) must be positive (got " +
                      std::to_string(ball_dim) + "); reduce M or p");
  }
  return std::exp(std::log(q.N) - q.n / 8.0) + std::exp(log_noise_ball_term(ball_dim, q.sigma));
}

double log_tau_base(const BoundParams& q) { return std::log(std::sqrt(2.0 / std::numbers::pi) * q.tau); }

double noise_floor_term(const BoundParams& q) { return (4.0 + 2.0 * q.c_const) / (q.N * q.N); }

BoundValue finish(double value) { return {value, value <= 0.0}; }

}  // namespace

void BoundParams::validate() const {
  if (n < 1 || N < 1 || cluster_size < 1 || d_L < 1 || p < 1 || M < 1)
    throw ConfigError("bound parameters: n, N, cluster_size, d_L, p and M must all be >= 1");
  if (cluster_size > N) throw ConfigError("bound parameters: cluster_size must not exceed N");
  if (!(tau > 0.0 && tau < 1.0)) throw ConfigError("bound parameters: tau must lie in the open interval (0,1)");
  if (!(sigma >= 0.0)) throw ConfigError("bound parameters: sigma must be >= 0");
  if (!(c_const > 0.0)) throw ConfigError("bound parameters: c must be > 0");
}

double unit_ball_volume(int d) {
  if (d < 0) throw ConfigError("unit_ball_volume: dimension must be >= 0");
  return std::exp(0.5 * d * std::log(std::numbers::pi) - std::lgamma(0.5 * d + 1.0));
}

SeparationCheck assumption3_check(const BoundParams& params, SeparationForm form) {
  params.validate();
  if (params.affinities.empty()) throw ConfigError("assumption3_check: affinities are required");
  if (!(params.n > params.d_L)) throw ConfigError("assumption3_check: need n > d_L");
  if (params.sigma >= 2.0 / 3.0)
    throw NumericalError("assumption3_check: separation condition undefined at this noise level (sigma >= 2/3)");

  const double log_n = std::log(params.N);
  const double denom = (8.0 - 12.0 * params.sigma) * std::sqrt((params.n - params.d_L) * log_n);
  const double numer = form == SeparationForm::AsStated
                           ? 9.0 * std::sqrt(3.0) * params.d_L * (1.0 + params.sigma)
                           : 3.0 * std::sqrt(3.0 * params.d_L) * (3.0 + 3.0 * params.sigma);
  SeparationCheck out;
  out.lhs = *std::max_element(params.affinities.begin(), params.affinities.end()) + numer / denom;
  out.rhs = params.tau / (4.0 * log_n);
  out.pass = out.lhs <= out.rhs;
  return out;
}

double j_term(int k_m, const BoundParams& params) {
  params.validate();
  if (k_m < 0 || k_m > params.p) throw ConfigError("j_term: k_m must lie in [0, p]");
  const double y = params.cluster_size;
  const double e1 = params.p - k_m + 1;
  const double first = std::exp(log_power_ratio(2.0 * std::numbers::e * (params.N - y), e1, e1) -
                                e1 * log_N_exponent_power(params));
  if (k_m == 0) return first;
  const double second = std::exp((y - params.d_L - k_m) * log_tau_base(params) +
                                 log_power_ratio(std::numbers::e * (y - 1.0), k_m - 1.0, k_m - 1.0));
  return first + second;
}

BoundValue iteration_bound(const BoundParams& params, const std::vector<int>& k_seq) {
  params.validate();
  const int M = static_cast<int>(k_seq.size());
  if (M < 1) throw ConfigError("iteration_bound: k sequence must be nonempty");
  for (int k : k_seq)
    if (k < 0 || k > params.p) throw ConfigError("iteration_bound: every k_m must lie in [0, p]");

  double value = 1.0 - base_terms(params, params.d_L - params.p * (M - 1));
  for (int k : k_seq) {
    if (k > 0) value -= j_term(k, params) + noise_floor_term(params);
  }
  return finish(value);
}

BoundValue omp_all_true_bound(const BoundParams& params) {
  params.validate();
  const int M = params.M;
  const double y = params.cluster_size;
  double value = 1.0 - base_terms(params, params.d_L - (M - 1));
  const double bracket =
      std::exp(std::log(2.0 * std::numbers::e * (params.N - y)) - log_N_exponent_power(params)) +
      std::exp((y - params.d_L - 1.0) * log_tau_base(params)) + noise_floor_term(params);
  value -= M * bracket;
  return finish(value);
}

std::vector<int> optimal_k_sequence(int k_t, int M, int p) {
  if (M < 1 || p < 1) throw ConfigError("optimal_k_sequence: M and p must be >= 1");
  if (k_t < 0 || k_t > p * M) throw ConfigError("optimal_k_sequence: k_t must lie in [0, pM]");
  const int q = k_t / M;
  const int r = k_t % M;
  std::vector<int> seq(static_cast<std::size_t>(M), q);
  std::fill_n(seq.begin(), r, q + 1);
  return seq;
}

BoundValue global_bound(const BoundParams& params, int k_t) {
  params.validate();
  const int M = params.M;
  const int p = params.p;
  if (k_t < 0 || k_t > p * M) throw ConfigError("global_bound: k_t must lie in [0, pM]");
  const int q = k_t / M;
  const int r = k_t % M;
  const double y = params.cluster_size;
  const double two_e_gap = 2.0 * std::numbers::e * (params.N - y);
  const double n_pow = log_N_exponent_power(params);
  const double tau_base = log_tau_base(params);
  const double floor_term = noise_floor_term(params);

  double value = 1.0 - base_terms(params, params.d_L - p * (M - 1));
  if (r > 0) {
    const double e1 = p - q;
    const double bracket = std::exp(log_power_ratio(two_e_gap, e1, e1) - e1 * n_pow) +
                           std::exp((y - params.d_L - q - 1.0) * tau_base +
                                    log_power_ratio(std::numbers::e * (y - 1.0), q, q)) +
                           floor_term;
    value -= r * bracket;
  }
  if (q > 0) {
    const double e1 = p - q + 1;
    const double bracket = std::exp(log_power_ratio(two_e_gap, e1, e1) - e1 * n_pow) +
                           std::exp((y - params.d_L - q) * tau_base +
                                    log_power_ratio(std::numbers::e * (y - 1.0), q - 1.0, q - 1.0)) +
                           floor_term;
    value -= (M - r) * bracket;
  }
  return finish(value);
}

BoundValue gomp_comparison_bound(const BoundParams& params, int k) {
  params.validate();
  const int M = params.M;
  const int p = params.p;
  if (k < 1 || k > p) throw ConfigError("gomp_comparison_bound: k must lie in [1, p]");
  const double y = params.cluster_size;
  const double e1 = p - k + 1;
  double value = 1.0 - base_terms(params, params.d_L - p * M + p);
  value -= M * std::exp(log_power_ratio(2.0 * std::numbers::e * (params.N - y), e1, e1) -
                        e1 * log_N_exponent_power(params));
  value -= M * std::exp((y - params.d_L - k) * log_tau_base(params) +
                        log_power_ratio(std::numbers::e * (y - 1.0), k - 1.0, k - 1.0));
  value -= M * noise_floor_term(params);
  return finish(value);
}

BoundValue omp_comparison_bound(const BoundParams& params, int k) {
  params.validate();
  const int M = params.M;
  const int p = params.p;
  if (k < 1 || k > p) throw ConfigError("omp_comparison_bound: k must lie in [1, p]");
  const double y = params.cluster_size;
  const double km = static_cast<double>(k) * M;
  double value = 1.0 - base_terms(params, params.d_L - p * M + 1);
  value -= km * std::exp(std::log(2.0 * std::numbers::e * (params.N - y)) - log_N_exponent_power(params));
  value -= km * std::exp((y - params.d_L - 1.0) * log_tau_base(params));
  value -= km * noise_floor_term(params);
  return finish(value);
}

int halting_remainder(int d_L, int p) {
  if (d_L < 1 || p < 1) throw ConfigError("halting_remainder: d_L and p must be >= 1");
  // Largest r with p r < d_L is ceil(d_L / p) - 1.
  const int r = (d_L + p - 1) / p - 1;
  return d_L - p * r;
}

BoundValue halting_bound(const BoundParams& params) {
  params.validate();
  const int p = params.p;
  if (p > params.d_L) throw ConfigError("halting_bound: need p <= d_L");
  const int u = halting_remainder(params.d_L, p);
  const double y = params.cluster_size;
  double value = 1.0 - base_terms(params, u);
  value -= 2.0 * p * std::exp(-std::sqrt(params.n / p));
  const double bracket =
      std::exp(std::log(2.0 * std::numbers::e * (params.N - y)) - log_N_exponent_power(params)) +
      std::exp((y - params.d_L - p) * log_tau_base(params) +
               log_power_ratio(std::numbers::e * (y - 1.0), p - 1.0, p - 1.0)) +
      noise_floor_term(params);
  value -= (params.d_L / p) * bracket;
  return finish(value);
}

KSequenceOptimum brute_force_k_min(int k_t, int M, int p, const BoundParams& params) {
  if (M < 1 || p < 1) throw ConfigError("brute_force_k_min: M and p must be >= 1");
  if (std::pow(p + 1.0, M) > 1e7)
    throw ConfigError("brute_force_k_min: (p+1)^M exceeds 1e7 sequences; use smaller M or p");
  if (k_t < 0 || k_t > p * M) throw ConfigError("brute_force_k_min: k_t must lie in [0, pM]");

  BoundParams q = params;
  q.p = p;
  q.M = M;
  std::vector<double> j(static_cast<std::size_t>(p) + 1);
  for (int k = 0; k <= p; ++k) j[static_cast<std::size_t>(k)] = j_term(k, q);

  KSequenceOptimum best;
  best.objective = std::numeric_limits<double>::infinity();
  std::vector<int> seq(static_cast<std::size_t>(M), 0);
  // Odometer over {0..p}^M.
  for (;;) {
    int total = 0;
    for (int k : seq) total += k;
    if (total == k_t) {
      double obj = 0.0;
      for (int k : seq) obj += j[static_cast<std::size_t>(k)];
      if (obj < best.objective) {
        best.objective = obj;
        best.sequence = seq;
      }
    }
    int pos = 0;
    while (pos < M && seq[static_cast<std::size_t>(pos)] == p) seq[static_cast<std::size_t>(pos++)] = 0;
    if (pos == M) break;
    ++seq[static_cast<std::size_t>(pos)];
  }
  return best;
}

ConcentrationEstimate mc_concentration(int m, double eps, std::uint64_t trials, Rng& rng, unsigned threads) {
  if (m < 1) throw ConfigError("mc_concentration: m must be >= 1");
  if (!(eps >= 0.0)) throw ConfigError("mc_concentration: eps must be >= 0");
  if (trials < 1) throw ConfigError("mc_concentration: trials must be >= 1");

  constexpr std::uint64_t kChunk = 4096;
  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  const std::uint64_t base = rng();
  std::vector<std::uint64_t> over(chunks, 0);
  std::vector<std::uint64_t> under(chunks, 0);
  const double root_m = std::sqrt(static_cast<double>(m));

  parallel_for(static_cast<std::size_t>(chunks), threads, [&](std::size_t c) {
    Rng stream(stream_seed(base, {c}));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> a(static_cast<std::size_t>(m));
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(trials, begin + kChunk);
    for (std::uint64_t t = begin; t < end; ++t) {
      double a_norm2 = 0.0;
      for (auto& v : a) {
        v = normal(stream);
        a_norm2 += v * v;
      }
      double dot = 0.0;
      double b_norm2 = 0.0;
      for (const double v : a) {
        const double b = normal(stream);
        dot += v * b;
        b_norm2 += b * b;
      }
      const double proj = std::abs(dot) / std::sqrt(a_norm2);
      const double b_norm = std::sqrt(b_norm2);
      if (proj > eps * b_norm) ++over[c];
      if (proj < eps * b_norm / root_m) ++under[c];
    }
  });

  ConcentrationEstimate out;
  out.trials = trials;
  std::uint64_t total_over = 0;
  std::uint64_t total_under = 0;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    total_over += over[c];
    total_under += under[c];
  }
  out.emp_a = static_cast<double>(total_over) / static_cast<double>(trials);
  out.emp_b = static_cast<double>(total_under) / static_cast<double>(trials);
  out.bound_a = 2.0 * std::exp(-m * eps * eps / 2.0);
  out.bound_b = std::sqrt(2.0 / std::numbers::pi) * eps;
  return out;
}

}  // namespace ssc::bounds
