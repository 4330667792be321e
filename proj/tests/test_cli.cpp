#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <sys/wait.h>

#include "ssc/bounds.hpp"
#include "ssc/cli.hpp"
#include "ssc/datagen.hpp"
#include "ssc/errors.hpp"
#include "ssc/io.hpp"

using namespace ssc;
using namespace ssc::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ssc_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::map<std::string, std::string>> read_table(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::string line;
  std::getline(in, line);
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) header.push_back(cell);
  }
  std::vector<std::map<std::string, std::string>> rows;
  while (std::getline(in, line)) {
    std::map<std::string, std::string> row;
    std::stringstream ss(line);
    std::size_t k = 0;
    std::string cell;
    while (std::getline(ss, cell, ',')) row[header.at(k++)] = cell;
    for (; k < header.size(); ++k) row[header[k]] = "";
    rows.push_back(row);
  }
  return rows;
}

int run_exe(const std::string& args) {
  const char* exe = std::getenv("SSC_GOMP_EXE");
  REQUIRE(exe != nullptr);
  const int status = std::system((std::string(exe) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

GenerateConfig small_generate(const fs::path& out) {
  GenerateConfig g;
  g.n = 60;
  g.d = 4;
  g.L = 3;
  g.phi = 5;
  g.rho = 0.0;
  g.seed = 17;
  g.out = out;
  return g;
}

}  // namespace

TEST_CASE("stop specification parsing") {
  CHECK(StopSpec::parse("ratio").mode == StopPolicy::Mode::ResidualRatio);
  const StopSpec f = StopSpec::parse("fixed:4");
  CHECK(f.mode == StopPolicy::Mode::FixedIterations);
  CHECK(*f.iterations == 4);
  CHECK(f.to_string() == "fixed:4");
  CHECK(StopSpec::parse("fixed").policy(3, 6).fixed_iterations == 2);
  CHECK(StopSpec::parse("fixed").policy(4, 6).fixed_iterations == 2);
  CHECK_THROWS_AS(StopSpec::parse("fixed").policy(2), ConfigError);
  for (const char* bad : {"fixed:0", "fixed:x", "fixed:3z", "sometimes", ""}) CHECK_THROWS_AS(StopSpec::parse(bad), ConfigError);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(GenerateConfig::from(Config::parse("phi = 1.5\nd = 3\n")), ConfigError);  // 4.5 points
  CHECK_THROWS_AS(GenerateConfig::from(Config::parse("rho = 2\n")), ConfigError);
  CHECK_THROWS_AS(GenerateConfig::from(Config::parse("typo = 2\n")), ConfigError);
  CHECK_THROWS_AS(SweepConfig::from(Config::parse("sigma = -1\n")), ConfigError);
  CHECK_THROWS_AS(SweepConfig::from(Config::parse("trials = 0\n")), ConfigError);
  CHECK_THROWS_AS(AodDemoConfig::from(Config::parse("neighbors = 8\np = 3\n")), ConfigError);
  CHECK_THROWS_AS(BoundsConfig::from(Config::parse("tau = 1.2\n")), ConfigError);
  CHECK_THROWS_AS(ClusterConfig::from(Config::parse("p = 2\n")), ConfigError);  // no data
  const SweepConfig s = SweepConfig::from(Config::parse("rho = 0.1\np = 2\nstop = fixed:2\n"));
  CHECK(s.rho == std::vector<double>{0.1});
  CHECK(s.p == std::vector<int>{2});
  CHECK(*s.stop.iterations == 2);
}

TEST_CASE("generate writes a reproducible dataset") {
  const fs::path dir = scratch("generate");
  GenerateConfig g = small_generate(dir / "a");
  g.rho = 0.4;
  g.sigma = 0.1;
  cmd_generate(g);
  g.out = dir / "b";
  cmd_generate(g);
  for (const char* f : {"points.csv", "labels.csv", "bases.csv", "manifest.txt"})
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));

  // Loading reproduces the in-memory generation bit for bit.
  Rng rng(g.seed);
  const SubspaceModel model = make_equiaffinity_subspaces(60, 4, 3, 0.4, rng);
  const DataSet data = add_noise(sample_points(model, {20, 20, 20}, rng), 0.1, rng);
  CHECK(io::read_points_csv(dir / "a/points.csv") == data.points);
  CHECK(io::read_labels_csv(dir / "a/labels.csv") == *data.labels);

  const SubspaceModel back = io::read_bases_csv(dir / "a/bases.csv");
  REQUIRE(back.num_subspaces() == 3);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = k + 1; l < 3; ++l) CHECK(std::abs(affinity(back.bases[k], back.bases[l]) - 0.4) < 1e-8);

  const io::Manifest manifest = io::read_manifest(dir / "a/manifest.txt");
  CHECK(std::find(manifest.begin(), manifest.end(), std::pair<std::string, std::string>{"seed", "17"}) != manifest.end());
}

TEST_CASE("cluster on a noiseless orthogonal set") {
  const fs::path dir = scratch("cluster");
  cmd_generate(small_generate(dir / "data"));

  ClusterConfig c = ClusterConfig::from(Config::parse("data = " + (dir / "data").string() + "\nL = 3\np = 2\nstop = fixed:2\nout = " + (dir / "r1").string() + "\n"));
  cmd_cluster(c);
  const auto metrics = read_table(dir / "r1/metrics.csv");
  REQUIRE(metrics.size() == 1);
  CHECK(metrics[0].at("ccr") == "1");
  CHECK(metrics[0].at("tnr") == "1");
  CHECK(metrics[0].at("anrn") == "4");

  c.out = dir / "r2";
  cmd_cluster(c);
  for (const char* f : {"C.csv", "G.csv", "labels_pred.csv", "metrics.csv"}) CHECK(slurp(dir / "r1" / f) == slurp(dir / "r2" / f));

  const Matrix cm = io::read_matrix_csv(dir / "r1/C.csv", false);
  const Matrix gm = io::read_matrix_csv(dir / "r1/G.csv", false);
  CHECK(cm.rows() == 60);
  CHECK(gm == gm.transpose());
  CHECK(io::read_labels_csv(dir / "r1/labels_pred.csv").size() == 60);

  // Without labels only ANRN is reported.
  fs::create_directories(dir / "unlabeled");
  fs::copy_file(dir / "data/points.csv", dir / "unlabeled/points.csv");
  ClusterConfig u = ClusterConfig::from(Config::parse("data = " + (dir / "unlabeled").string() + "\nout = " + (dir / "r3").string() + "\n"));
  cmd_cluster(u);
  const auto m3 = read_table(dir / "r3/metrics.csv");
  CHECK(m3[0].count("anrn") == 1);
  CHECK(m3[0].count("ccr") == 0);
  CHECK(m3[0].count("tnr") == 0);
  // The cluster count was estimated from the eigengap.
  CHECK(io::read_manifest(dir / "r3/manifest.txt")[8] == std::pair<std::string, std::string>{"L", "3"});
}

TEST_CASE("sweep output shape and trends") {
  const fs::path dir = scratch("sweep");
  SweepConfig one;
  one.n = 40;
  one.d = 4;
  one.rho = {0.2};
  one.phi = {4};
  one.sigma = {0.1};
  one.p = {2};
  one.trials = 1;
  one.restarts = 3;
  one.out = dir / "one";
  const auto rows = cmd_sweep(one);
  CHECK(rows.size() == 3);
  CHECK(read_table(dir / "one/sweep.csv").size() == 3);

  SweepConfig grid = one;
  grid.rho = {0.0, 0.5};
  grid.sigma = {0.0, 0.5};
  grid.p = {1, 2};
  grid.trials = 3;
  grid.out = dir / "grid";
  const auto g = cmd_sweep(grid);
  const auto table = read_table(dir / "grid/sweep.csv");
  CHECK(table.size() == 2 * 1 * 2 * 2 * 3);
  CHECK(g.size() == table.size());
  for (double rho : grid.rho)
    for (int p : grid.p) {
      double clean = -1, noisy = -1;
      for (const auto& r : g)
        if (r.rho == rho && r.p == p && r.metric == "tnr") (r.sigma == 0.0 ? clean : noisy) = r.mean;
      CHECK(clean >= noisy);
    }
  for (const char* f : {"sweep_tnr_rho0_phi0.svg", "sweep_ccr_rho1_phi0.svg", "sweep_anrn_rho0_phi0.svg", "manifest.txt"})
    CHECK(fs::exists(dir / "grid" / f));
}

TEST_CASE("bounds command") {
  const fs::path dir = scratch("bounds");
  BoundsConfig b = BoundsConfig::from(Config::parse(
      "n = 10000\nN = 10000\ncluster_size = 3000\nd_L = 20\nsigma = 0.01\ntau = 0.5\np = 1, 3\nM = 5\n"
      "k_t = 5, 10, 15\naffinities = 0.01, 0.02\nout = " + (dir / "b").string() + "\n"));
  cmd_bounds(b);
  const auto rows = read_table(dir / "b/bounds.csv");
  REQUIRE(rows.size() == 4);  // p = 1 keeps only k_t = 5; 10 and 15 exceed pM
  bounds::BoundParams q;
  q.n = 1e4;
  q.N = 1e4;
  q.cluster_size = 3000;
  q.d_L = 20;
  q.sigma = 0.01;
  q.tau = 0.5;
  q.p = 1;
  q.M = 5;
  int omp_rows = 0;
  for (const auto& r : rows) {
    if (r.at("p") == "1") {
      ++omp_rows;
      CHECK(io::parse_double(r.at("omp_all_true")) == doctest::Approx(bounds::omp_all_true_bound(q).value).epsilon(1e-15));
      CHECK(io::parse_double(r.at("omp_all_true")) == doctest::Approx(io::parse_double(r.at("iteration_bound"))).epsilon(1e-12));
    } else {
      CHECK(r.at("omp_all_true").empty());
    }
    if (r.at("p") == "3" && r.at("k_t") == "10") {
      CHECK(io::parse_double(r.at("gomp_comparison")) > io::parse_double(r.at("omp_comparison")));
      CHECK(r.at("k_sequence") == "2 2 2 2 2");
    }
    CHECK(r.at("separation_pass") == "0");
  }
  CHECK(omp_rows == 1);
}

TEST_CASE("aod demo") {
  const fs::path dir = scratch("aod");
  AodDemoConfig a;
  a.trials = 4;
  a.out = dir;
  const auto rows = cmd_aod_demo(a);
  REQUIRE(rows.size() == 18);
  for (std::size_t k = 9; k < 18; k += 3) {
    CHECK(rows[k].mean_aod == rows[k + 1].mean_aod);
    CHECK(rows[k].mean_aod == rows[k + 2].mean_aod);
  }
  CHECK(read_table(dir / "aod_demo.csv").size() == 18);
  CHECK(fs::exists(dir / "aod_demo_aod.svg"));
  CHECK(fs::exists(dir / "aod_demo_true_rate.svg"));
}

TEST_CASE("executable exit codes") {
  const fs::path dir = scratch("exe");
  CHECK(run_exe("--help") == 0);
  CHECK(run_exe("") == 2);
  CHECK(run_exe("frobnicate") == 2);
  CHECK(run_exe("generate --seed notanumber") == 2);
  CHECK(run_exe("generate --out " + (dir / "g").string() + " --seed 3") == 0);
  CHECK(fs::exists(dir / "g/points.csv"));
  io::write_text(dir / "bad.ini", "tau = 1.2\n");
  CHECK(run_exe("bounds --config " + (dir / "bad.ini").string() + " --out " + (dir / "b").string()) == 2);
  io::write_text(dir / "typo.ini", "sigmaa = 0.1\n");
  CHECK(run_exe("generate --config " + (dir / "typo.ini").string()) == 2);
  CHECK(run_exe("cluster --data " + (dir / "nowhere").string()) == 2);
  CHECK(run_exe("cluster --data " + (dir / "g").string() + " --stop fixed:2 -p 3 -L 3 --out " + (dir / "c").string()) == 0);
  CHECK(run_exe("cluster --data " + (dir / "g").string() + " --stop sometimes") == 2);
}
