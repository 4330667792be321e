#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ssc/config.hpp"
#include "ssc/gomp.hpp"

namespace ssc::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Parsed `--stop` value. `fixed` without a count means M = ceil(d / p).
struct StopSpec {
  StopPolicy::Mode mode = StopPolicy::Mode::ResidualRatio;
  std::optional<int> iterations;

  static StopSpec parse(const std::string& text);
  StopPolicy policy(int p, std::optional<int> subspace_dim = std::nullopt) const;
  std::string to_string() const;
};

struct GenerateConfig {
  int n = 350;
  int d = 6;
  int L = 3;
  double rho = 0.0;
  double phi = 8.0;
  double sigma = 0.0;
  std::uint64_t seed = 1;
  std::filesystem::path out = "out";

  static GenerateConfig from(const Config& cfg);
};

struct ClusterConfig {
  std::filesystem::path points;
  std::optional<std::filesystem::path> labels;
  int L = 0;
  int max_clusters = 10;
  int p = 1;
  StopSpec stop;
  int restarts = 20;
  bool normalize = false;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::filesystem::path out = "out";

  static ClusterConfig from(const Config& cfg);
};

struct SweepConfig {
  int n = 350;
  int d = 6;
  int L = 3;
  std::vector<double> rho{0.0, 0.3, 0.6};
  std::vector<double> phi{8.0};
  std::vector<double> sigma{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  std::vector<int> p{1, 2, 3};
  StopSpec stop{StopPolicy::Mode::FixedIterations, std::nullopt};
  int trials = 20;
  int restarts = 20;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::filesystem::path out = "out";

  static SweepConfig from(const Config& cfg);
};

struct BoundsConfig {
  std::vector<double> n{1e4};
  std::vector<double> N{1e4};
  std::vector<double> cluster_size{3000};
  std::vector<double> d_L{20};
  std::vector<double> sigma{0.01};
  std::vector<double> tau{0.5};
  std::vector<double> p{3};
  std::vector<double> M{5};
  std::vector<double> c{1.0};
  std::vector<long long> k_t;  // empty: pM
  std::vector<double> affinities;
  std::filesystem::path out = "out";

  static BoundsConfig from(const Config& cfg);
};

struct AodDemoConfig {
  int n = 100;
  int d = 9;
  int L = 3;
  int per_cluster = 45;
  double sigma = 0.2;
  int neighbors = 9;
  std::vector<int> p{1, 3};
  int trials = 200;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::filesystem::path out = "out";

  static AodDemoConfig from(const Config& cfg);
};

struct SweepRow {
  double rho = 0, phi = 0, sigma = 0;
  int p = 0;
  std::string metric;
  double mean = 0, stddev = 0;
};

struct AodDemoRow {
  int p = 0;
  int neighbor = 0;  // 1-based
  double mean_aod = 0;
  double true_rate = 0;
};

void cmd_generate(const GenerateConfig& cfg);
void cmd_cluster(const ClusterConfig& cfg);
std::vector<SweepRow> cmd_sweep(const SweepConfig& cfg);
void cmd_bounds(const BoundsConfig& cfg);
std::vector<AodDemoRow> cmd_aod_demo(const AodDemoConfig& cfg);

/// Entry point of the `ssc-gomp` executable; returns the exit code.
int run(int argc, char** argv);

}  // namespace ssc::cli
