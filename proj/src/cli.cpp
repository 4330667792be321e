#include "ssc/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <sstream>

#include "ssc/bounds.hpp"
#include "ssc/datagen.hpp"
#include "ssc/errors.hpp"
#include "ssc/io.hpp"
#include "ssc/parallel.hpp"
#include "ssc/pipeline.hpp"
#include "ssc/svg.hpp"

namespace ssc::cli {

namespace fs = std::filesystem;
using io::format_double;

namespace {

int positive_int(const Config& cfg, const std::string& key, long long fallback) {
  const long long v = cfg.get_int(key, fallback);
  if (v < 1 || v > 1'000'000'000) throw ConfigError("config key '" + key + "' must be a positive integer");
  return static_cast<int>(v);
}

std::vector<int> positive_ints(const Config& cfg, const std::string& key, const std::vector<int>& fallback) {
  std::vector<long long> fb(fallback.begin(), fallback.end());
  std::vector<int> out;
  for (long long v : cfg.get_ints(key, fb)) {
    if (v < 1) throw ConfigError("config key '" + key + "': every entry must be >= 1");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

void reject_unused(const Config& cfg) {
  const auto unused = cfg.unused_keys();
  if (unused.empty()) return;
  std::string msg = "unknown config key(s) for this command:";
  for (const auto& k : unused) msg += " " + k;
  throw ConfigError(msg);
}

int cluster_size_from_density(double phi, int d) {
  const double size = phi * d;
  if (!(size >= 1.0) || std::abs(size - std::round(size)) > 1e-9)
    throw ConfigError("sampling density phi=" + format_double(phi) + " times d=" + std::to_string(d) +
                      " must be a positive integer cluster size");
  return static_cast<int>(std::lround(size));
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double stddev_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

std::string join_values(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_double(v[i]);
  return out;
}

std::string join_values(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

}  // namespace

StopSpec StopSpec::parse(const std::string& text) {
  StopSpec spec;
  if (text == "ratio") return spec;
  spec.mode = StopPolicy::Mode::FixedIterations;
  if (text == "fixed") return spec;
  if (text.rfind("fixed:", 0) == 0) {
    try {
      std::size_t used = 0;
      const int m = std::stoi(text.substr(6), &used);
      if (used == text.size() - 6 && m >= 1) {
        spec.iterations = m;
        return spec;
      }
    } catch (const std::exception&) {
    }
  }
  throw ConfigError("stop mode must be 'ratio', 'fixed' or 'fixed:<M>' (got '" + text + "')");
}

StopPolicy StopSpec::policy(int p, std::optional<int> subspace_dim) const {
  if (mode == StopPolicy::Mode::ResidualRatio) return StopPolicy::ratio(p);
  if (iterations) return StopPolicy::fixed(*iterations, p);
  if (!subspace_dim) throw ConfigError("stop mode 'fixed' needs an explicit count here; use 'fixed:<M>'");
  return StopPolicy::fixed((*subspace_dim + p - 1) / p, p);
}

std::string StopSpec::to_string() const {
  if (mode == StopPolicy::Mode::ResidualRatio) return "ratio";
  return iterations ? "fixed:" + std::to_string(*iterations) : "fixed";
}

GenerateConfig GenerateConfig::from(const Config& cfg) {
  GenerateConfig g;
  g.n = positive_int(cfg, "n", g.n);
  g.d = positive_int(cfg, "d", g.d);
  g.L = positive_int(cfg, "L", g.L);
  g.rho = cfg.get_double("rho", g.rho);
  g.phi = cfg.get_double("phi", g.phi);
  g.sigma = cfg.get_double("sigma", g.sigma);
  g.seed = cfg.get_u64("seed", g.seed);
  g.out = cfg.get_string("out", g.out.string());
  if (!(g.rho >= 0.0 && g.rho <= 1.0)) throw ConfigError("rho must lie in [0, 1]");
  if (!(g.sigma >= 0.0)) throw ConfigError("sigma must be >= 0");
  cluster_size_from_density(g.phi, g.d);
  reject_unused(cfg);
  return g;
}

ClusterConfig ClusterConfig::from(const Config& cfg) {
  ClusterConfig c;
  if (cfg.has("data")) {
    const fs::path dir = cfg.get_string("data", "");
    c.points = dir / "points.csv";
    if (fs::exists(dir / "labels.csv")) c.labels = dir / "labels.csv";
  }
  if (cfg.has("points")) c.points = cfg.get_string("points", "");
  if (cfg.has("labels")) c.labels = fs::path(cfg.get_string("labels", ""));
  if (c.points.empty()) throw ConfigError("cluster: give --data <dir> or a 'points' config key");
  const long long clusters = cfg.get_int("L", 0);
  if (clusters < 0) throw ConfigError("L must be >= 0 (0 estimates it)");
  c.L = static_cast<int>(clusters);
  c.max_clusters = positive_int(cfg, "L_max", c.max_clusters);
  c.p = positive_int(cfg, "p", c.p);
  c.stop = StopSpec::parse(cfg.get_string("stop", "ratio"));
  if (c.stop.mode == StopPolicy::Mode::FixedIterations && !c.stop.iterations)
    throw ConfigError("cluster: use 'fixed:<M>'; the subspace dimension is unknown");
  c.restarts = positive_int(cfg, "restarts", c.restarts);
  c.normalize = cfg.get_bool("normalize", false);
  c.seed = cfg.get_u64("seed", c.seed);
  c.threads = static_cast<unsigned>(cfg.get_int("threads", 0));
  c.out = cfg.get_string("out", c.out.string());
  reject_unused(cfg);
  return c;
}

SweepConfig SweepConfig::from(const Config& cfg) {
  SweepConfig s;
  s.n = positive_int(cfg, "n", s.n);
  s.d = positive_int(cfg, "d", s.d);
  s.L = positive_int(cfg, "L", s.L);
  s.rho = cfg.get_doubles("rho", s.rho);
  s.phi = cfg.get_doubles("phi", s.phi);
  s.sigma = cfg.get_doubles("sigma", s.sigma);
  s.p = positive_ints(cfg, "p", s.p);
  s.stop = StopSpec::parse(cfg.get_string("stop", s.stop.to_string()));
  s.trials = positive_int(cfg, "trials", s.trials);
  s.restarts = positive_int(cfg, "restarts", s.restarts);
  s.seed = cfg.get_u64("seed", s.seed);
  s.threads = static_cast<unsigned>(cfg.get_int("threads", 0));
  s.out = cfg.get_string("out", s.out.string());
  for (double r : s.rho)
    if (!(r >= 0.0 && r <= 1.0)) throw ConfigError("every rho must lie in [0, 1]");
  for (double v : s.sigma)
    if (!(v >= 0.0)) throw ConfigError("every sigma must be >= 0");
  for (double f : s.phi) cluster_size_from_density(f, s.d);
  reject_unused(cfg);
  return s;
}

BoundsConfig BoundsConfig::from(const Config& cfg) {
  BoundsConfig b;
  b.n = cfg.get_doubles("n", b.n);
  b.N = cfg.get_doubles("N", b.N);
  b.cluster_size = cfg.get_doubles("cluster_size", b.cluster_size);
  b.d_L = cfg.get_doubles("d_L", b.d_L);
  b.sigma = cfg.get_doubles("sigma", b.sigma);
  b.tau = cfg.get_doubles("tau", b.tau);
  b.p = cfg.get_doubles("p", b.p);
  b.M = cfg.get_doubles("M", b.M);
  b.c = cfg.get_doubles("c", b.c);
  b.k_t = cfg.get_ints("k_t", {});
  for (long long kt : b.k_t)
    if (kt < 0) throw ConfigError("every k_t must be >= 0");
  b.affinities = cfg.get_doubles("affinities", {});
  b.out = cfg.get_string("out", b.out.string());
  for (double t : b.tau)
    if (!(t > 0.0 && t < 1.0)) throw ConfigError("tau=" + format_double(t) + " is invalid: tau must lie in (0,1)");
  for (const auto* list : {&b.d_L, &b.p, &b.M})
    for (double v : *list)
      if (v < 1 || v != std::floor(v)) throw ConfigError("d_L, p and M must be positive integers");
  reject_unused(cfg);
  return b;
}

AodDemoConfig AodDemoConfig::from(const Config& cfg) {
  AodDemoConfig a;
  a.n = positive_int(cfg, "n", a.n);
  a.d = positive_int(cfg, "d", a.d);
  a.L = positive_int(cfg, "L", a.L);
  a.per_cluster = positive_int(cfg, "per_cluster", a.per_cluster);
  a.sigma = cfg.get_double("sigma", a.sigma);
  a.neighbors = positive_int(cfg, "neighbors", a.neighbors);
  a.p = positive_ints(cfg, "p", a.p);
  a.trials = positive_int(cfg, "trials", a.trials);
  a.seed = cfg.get_u64("seed", a.seed);
  a.threads = static_cast<unsigned>(cfg.get_int("threads", 0));
  a.out = cfg.get_string("out", a.out.string());
  if (!(a.sigma >= 0.0)) throw ConfigError("sigma must be >= 0");
  for (int p : a.p)
    if (a.neighbors % p != 0)
      throw ConfigError("neighbors=" + std::to_string(a.neighbors) + " must be a multiple of every p");
  reject_unused(cfg);
  return a;
}

void cmd_generate(const GenerateConfig& cfg) {
  Rng rng(cfg.seed);
  const SubspaceModel model = make_equiaffinity_subspaces(cfg.n, cfg.d, static_cast<std::size_t>(cfg.L), cfg.rho, rng);
  const auto per_cluster = cluster_size_from_density(cfg.phi, cfg.d);
  const std::vector<Eigen::Index> counts(static_cast<std::size_t>(cfg.L), per_cluster);
  DataSet data = sample_points(model, counts, rng);
  data = add_noise(data, cfg.sigma, rng);

  io::write_points_csv(cfg.out / "points.csv", data.points);
  io::write_labels_csv(cfg.out / "labels.csv", *data.labels);
  io::write_bases_csv(cfg.out / "bases.csv", model);
  io::write_manifest(cfg.out / "manifest.txt", {{"command", "generate"},
                                                {"seed", std::to_string(cfg.seed)},
                                                {"n", std::to_string(cfg.n)},
                                                {"d", std::to_string(cfg.d)},
                                                {"L", std::to_string(cfg.L)},
                                                {"rho", format_double(cfg.rho)},
                                                {"phi", format_double(cfg.phi)},
                                                {"sigma", format_double(cfg.sigma)},
                                                {"N", std::to_string(data.size())}});
}

void cmd_cluster(const ClusterConfig& cfg) {
  DataSet data;
  data.points = io::read_points_csv(cfg.points);
  if (cfg.labels) {
    data.labels = io::read_labels_csv(*cfg.labels);
    if (static_cast<Eigen::Index>(data.labels->size()) != data.size())
      throw ConfigError("labels file has " + std::to_string(data.labels->size()) + " entries for " +
                        std::to_string(data.size()) + " points");
  }
  if (data.size() < 2) throw ConfigError("cluster: need at least two points");
  if (cfg.normalize) data = normalize_points(data);

  ClusteringOptions options;
  options.policy = cfg.stop.policy(cfg.p);
  options.num_clusters = cfg.L;
  options.max_clusters = cfg.max_clusters;
  options.restarts = cfg.restarts;
  options.seed = cfg.seed;
  options.threads = cfg.threads;
  const ClusteringResult result = cluster_dataset(data, options);

  io::write_matrix_csv(cfg.out / "C.csv", result.coefficients.values);
  io::write_matrix_csv(cfg.out / "G.csv", result.graph.weights);
  io::write_labels_csv(cfg.out / "labels_pred.csv", result.labels.assignment);

  std::string header = "anrn";
  std::string row = format_double(result.metrics.anrn);
  if (result.metrics.tnr) {
    header += ",tnr,tnr_vacuous";
    row += "," + format_double(*result.metrics.tnr) + "," + (result.metrics.tnr_vacuous ? "1" : "0");
  }
  if (result.metrics.ccr) {
    header += ",ccr";
    row += "," + format_double(*result.metrics.ccr);
  }
  io::write_text(cfg.out / "metrics.csv", header + "\n" + row + "\n");
  io::write_manifest(cfg.out / "manifest.txt", {{"command", "cluster"},
                                                {"seed", std::to_string(cfg.seed)},
                                                {"points", cfg.points.string()},
                                                {"labels", cfg.labels ? cfg.labels->string() : ""},
                                                {"N", std::to_string(data.size())},
                                                {"n", std::to_string(data.ambient_dim())},
                                                {"p", std::to_string(cfg.p)},
                                                {"stop", cfg.stop.to_string()},
                                                {"L", std::to_string(result.labels.num_clusters)},
                                                {"restarts", std::to_string(cfg.restarts)},
                                                {"normalize", cfg.normalize ? "true" : "false"}});
}

std::vector<SweepRow> cmd_sweep(const SweepConfig& cfg) {
  const std::size_t n_rho = cfg.rho.size(), n_phi = cfg.phi.size(), n_sigma = cfg.sigma.size();
  const std::size_t n_p = cfg.p.size();
  const std::size_t cells = n_rho * n_phi * n_sigma;
  const auto trials = static_cast<std::size_t>(cfg.trials);
  constexpr std::size_t kMetrics = 3;  // tnr, anrn, ccr

  // results[((cell * trials + t) * n_p + pi) * kMetrics + metric]
  std::vector<double> results(cells * trials * n_p * kMetrics, 0.0);

  parallel_for(cells * trials, cfg.threads, [&](std::size_t job) {
    const std::size_t cell = job / trials;
    const std::size_t t = job % trials;
    const std::size_t ri = cell / (n_phi * n_sigma);
    const std::size_t fi = (cell / n_sigma) % n_phi;
    const std::size_t si = cell % n_sigma;

    // Streams are shared across grid values where possible so that cells
    // differ only in the parameter being varied.
    Rng frame_rng(stream_seed(cfg.seed, {t, 0}));
    const SubspaceModel model =
        make_equiaffinity_subspaces(cfg.n, cfg.d, static_cast<std::size_t>(cfg.L), cfg.rho[ri], frame_rng);
    Rng point_rng(stream_seed(cfg.seed, {t, 1, fi}));
    const auto per_cluster = cluster_size_from_density(cfg.phi[fi], cfg.d);
    DataSet data = sample_points(model, std::vector<Eigen::Index>(static_cast<std::size_t>(cfg.L), per_cluster),
                                 point_rng);
    Rng noise_rng(stream_seed(cfg.seed, {t, 2, fi, si}));
    data = add_noise(data, cfg.sigma[si], noise_rng);

    for (std::size_t pi = 0; pi < n_p; ++pi) {
      ClusteringOptions options;
      options.policy = cfg.stop.policy(cfg.p[pi], cfg.d);
      options.num_clusters = cfg.L;
      options.restarts = cfg.restarts;
      options.seed = stream_seed(cfg.seed, {t, 3, cell, pi});
      options.threads = 1;
      const ClusteringResult r = cluster_dataset(data, options);
      double* slot = &results[((cell * trials + t) * n_p + pi) * kMetrics];
      slot[0] = *r.metrics.tnr;
      slot[1] = r.metrics.anrn;
      slot[2] = *r.metrics.ccr;
    }
  });

  static constexpr std::array<const char*, kMetrics> kNames{"tnr", "anrn", "ccr"};
  std::vector<SweepRow> rows;
  std::ostringstream csv;
  csv << "rho,phi,sigma,p,metric,mean,std\n";
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const std::size_t ri = cell / (n_phi * n_sigma);
    const std::size_t fi = (cell / n_sigma) % n_phi;
    const std::size_t si = cell % n_sigma;
    for (std::size_t pi = 0; pi < n_p; ++pi) {
      for (std::size_t m = 0; m < kMetrics; ++m) {
        std::vector<double> values;
        for (std::size_t t = 0; t < trials; ++t) values.push_back(results[((cell * trials + t) * n_p + pi) * kMetrics + m]);
        SweepRow row{cfg.rho[ri], cfg.phi[fi], cfg.sigma[si], cfg.p[pi], kNames[m], mean_of(values), stddev_of(values)};
        csv << format_double(row.rho) << ',' << format_double(row.phi) << ',' << format_double(row.sigma) << ','
            << row.p << ',' << row.metric << ',' << format_double(row.mean) << ',' << format_double(row.stddev)
            << '\n';
        rows.push_back(std::move(row));
      }
    }
  }
  io::write_text(cfg.out / "sweep.csv", csv.str());

  // One chart per (rho, phi) panel and metric: sigma on x, one series per p.
  for (std::size_t ri = 0; ri < n_rho; ++ri) {
    for (std::size_t fi = 0; fi < n_phi; ++fi) {
      for (std::size_t m = 0; m < kMetrics; ++m) {
        std::vector<svg::Series> series;
        for (std::size_t pi = 0; pi < n_p; ++pi) {
          svg::Series s{"p = " + std::to_string(cfg.p[pi]), {}, {}};
          for (const auto& row : rows) {
            if (row.rho == cfg.rho[ri] && row.phi == cfg.phi[fi] && row.p == cfg.p[pi] && row.metric == kNames[m]) {
              s.x.push_back(row.sigma);
              s.y.push_back(row.mean);
            }
          }
          series.push_back(std::move(s));
        }
        svg::ChartSpec spec;
        spec.title = std::string(kNames[m]) + " (rho = " + format_double(cfg.rho[ri]) +
                     ", phi = " + format_double(cfg.phi[fi]) + ")";
        spec.x_label = "noise standard deviation sigma";
        spec.y_label = kNames[m];
        io::write_text(cfg.out / ("sweep_" + std::string(kNames[m]) + "_rho" + std::to_string(ri) + "_phi" +
                                  std::to_string(fi) + ".svg"),
                       svg::line_chart(spec, series));
      }
    }
  }

  io::write_manifest(cfg.out / "manifest.txt", {{"command", "sweep"},
                                                {"seed", std::to_string(cfg.seed)},
                                                {"n", std::to_string(cfg.n)},
                                                {"d", std::to_string(cfg.d)},
                                                {"L", std::to_string(cfg.L)},
                                                {"rho", join_values(cfg.rho)},
                                                {"phi", join_values(cfg.phi)},
                                                {"sigma", join_values(cfg.sigma)},
                                                {"p", join_values(cfg.p)},
                                                {"stop", cfg.stop.to_string()},
                                                {"trials", std::to_string(cfg.trials)},
                                                {"restarts", std::to_string(cfg.restarts)}});
  return rows;
}

void cmd_bounds(const BoundsConfig& cfg) {
  std::ostringstream csv;
  csv << "n,N,cluster_size,d_L,sigma,tau,p,M,c,k_t,k_sequence,iteration_bound,global_bound,global_vacuous,"
         "gomp_comparison,omp_comparison,omp_all_true,halting_bound,halting_vacuous,separation_lhs,"
         "separation_rhs,separation_pass\n";

  auto cell = [](auto&& fn) -> std::string {
    try {
      return fn();
    } catch (const ConfigError&) {
      return "";
    } catch (const NumericalError&) {
      return "";
    }
  };

  for (double n : cfg.n)
    for (double N : cfg.N)
      for (double y : cfg.cluster_size)
        for (double d : cfg.d_L)
          for (double sigma : cfg.sigma)
            for (double tau : cfg.tau)
              for (double p : cfg.p)
                for (double M : cfg.M)
                  for (double c : cfg.c) {
                    bounds::BoundParams q;
                    q.n = n;
                    q.N = N;
                    q.cluster_size = y;
                    q.d_L = static_cast<int>(d);
                    q.sigma = sigma;
                    q.tau = tau;
                    q.p = static_cast<int>(p);
                    q.M = static_cast<int>(M);
                    q.c_const = c;
                    q.affinities = cfg.affinities;
                    q.validate();

                    std::vector<long long> kts = cfg.k_t;
                    if (kts.empty()) kts.push_back(static_cast<long long>(q.p) * q.M);
                    for (long long kt_raw : kts) {
                      const int kt = static_cast<int>(kt_raw);
                      // A shared k_t list may exceed pM for some cells; those pairs are skipped.
                      if (kt > q.p * q.M) continue;
                      const auto seq = bounds::optimal_k_sequence(kt, q.M, q.p);
                      std::string seq_text;
                      for (std::size_t i = 0; i < seq.size(); ++i) seq_text += (i ? " " : "") + std::to_string(seq[i]);

                      csv << format_double(n) << ',' << format_double(N) << ',' << format_double(y) << ','
                          << q.d_L << ',' << format_double(sigma) << ',' << format_double(tau) << ',' << q.p << ','
                          << q.M << ',' << format_double(c) << ',' << kt << ',' << seq_text << ',';
                      csv << cell([&] { return format_double(bounds::iteration_bound(q, seq).value); }) << ',';
                      std::string vac;
                      csv << cell([&] {
                        const auto g = bounds::global_bound(q, kt);
                        vac = g.vacuous ? "1" : "0";
                        return format_double(g.value);
                      }) << ',' << vac << ',';
                      const bool per_iter = kt % q.M == 0 && kt / q.M >= 1;
                      csv << (per_iter ? cell([&] { return format_double(bounds::gomp_comparison_bound(q, kt / q.M).value); }) : "")
                          << ',';
                      csv << (per_iter ? cell([&] { return format_double(bounds::omp_comparison_bound(q, kt / q.M).value); }) : "")
                          << ',';
                      csv << (q.p == 1 ? cell([&] { return format_double(bounds::omp_all_true_bound(q).value); }) : "")
                          << ',';
                      std::string hvac;
                      csv << cell([&] {
                        const auto h = bounds::halting_bound(q);
                        hvac = h.vacuous ? "1" : "0";
                        return format_double(h.value);
                      }) << ',' << hvac << ',';
                      if (!q.affinities.empty()) {
                        std::string rhs, pass;
                        csv << cell([&] {
                          const auto s = bounds::assumption3_check(q);
                          rhs = format_double(s.rhs);
                          pass = s.pass ? "1" : "0";
                          return format_double(s.lhs);
                        }) << ',' << rhs << ',' << pass;
                      } else {
                        csv << ",,";
                      }
                      csv << '\n';
                    }
                  }
  io::write_text(cfg.out / "bounds.csv", csv.str());
}

std::vector<AodDemoRow> cmd_aod_demo(const AodDemoConfig& cfg) {
  const auto trials = static_cast<std::size_t>(cfg.trials);
  const std::size_t n_p = cfg.p.size();
  // traces[t * n_p + pi]
  std::vector<std::vector<GompTrace>> traces(trials * n_p);
  std::vector<std::vector<int>> labels(trials);

  parallel_for(trials, cfg.threads, [&](std::size_t t) {
    Rng rng(stream_seed(cfg.seed, {t}));
    const SubspaceModel model = make_orthogonal_subspaces(cfg.n, cfg.d, static_cast<std::size_t>(cfg.L), rng);
    DataSet data = sample_points(model, std::vector<Eigen::Index>(static_cast<std::size_t>(cfg.L), cfg.per_cluster), rng);
    data = add_noise(data, cfg.sigma, rng);
    labels[t] = *data.labels;
    for (std::size_t pi = 0; pi < n_p; ++pi) {
      const StopPolicy policy = StopPolicy::fixed(cfg.neighbors / cfg.p[pi], cfg.p[pi]);
      traces[t * n_p + pi] = regress_all(data, policy, 1, &model).traces;
    }
  });

  std::vector<AodDemoRow> rows;
  std::vector<svg::Series> aod_series, rate_series;
  for (std::size_t pi = 0; pi < n_p; ++pi) {
    // Accumulate per trial, then combine; every run keeps the same count.
    std::vector<double> aod_sum, rate_sum, weight;
    for (std::size_t t = 0; t < trials; ++t) {
      const auto& tr = traces[t * n_p + pi];
      const auto aods = mean_aod_per_index(tr);
      const auto rates = per_neighbor_true_rate(tr, labels[t]);
      if (aod_sum.size() < aods.size()) {
        aod_sum.resize(aods.size(), 0.0);
        rate_sum.resize(aods.size(), 0.0);
        weight.resize(aods.size(), 0.0);
      }
      for (std::size_t k = 0; k < aods.size(); ++k) {
        aod_sum[k] += aods[k];
        rate_sum[k] += rates[k];
        weight[k] += 1.0;
      }
    }
    svg::Series a{"p = " + std::to_string(cfg.p[pi]), {}, {}};
    svg::Series r = a;
    for (std::size_t k = 0; k < aod_sum.size(); ++k) {
      AodDemoRow row{cfg.p[pi], static_cast<int>(k + 1), aod_sum[k] / weight[k], rate_sum[k] / weight[k]};
      a.x.push_back(row.neighbor);
      a.y.push_back(row.mean_aod);
      r.x.push_back(row.neighbor);
      r.y.push_back(row.true_rate);
      rows.push_back(row);
    }
    aod_series.push_back(std::move(a));
    rate_series.push_back(std::move(r));
  }

  std::ostringstream csv;
  csv << "p,neighbor,mean_aod,true_rate\n";
  for (const auto& row : rows)
    csv << row.p << ',' << row.neighbor << ',' << format_double(row.mean_aod) << ',' << format_double(row.true_rate)
        << '\n';
  io::write_text(cfg.out / "aod_demo.csv", csv.str());

  svg::ChartSpec aod_spec{"Average angle of deviation", "neighbor index k", "mean AoD (rad)"};
  io::write_text(cfg.out / "aod_demo_aod.svg", svg::line_chart(aod_spec, aod_series));
  svg::ChartSpec rate_spec{"True neighbor rate", "neighbor index k", "true neighbor rate"};
  io::write_text(cfg.out / "aod_demo_true_rate.svg", svg::line_chart(rate_spec, rate_series));
  io::write_manifest(cfg.out / "manifest.txt", {{"command", "aod-demo"},
                                                {"seed", std::to_string(cfg.seed)},
                                                {"n", std::to_string(cfg.n)},
                                                {"d", std::to_string(cfg.d)},
                                                {"L", std::to_string(cfg.L)},
                                                {"per_cluster", std::to_string(cfg.per_cluster)},
                                                {"sigma", format_double(cfg.sigma)},
                                                {"neighbors", std::to_string(cfg.neighbors)},
                                                {"p", join_values(cfg.p)},
                                                {"trials", std::to_string(cfg.trials)}});
  return rows;
}

int run(int argc, char** argv) {
  CLI::App app{"Sparse subspace clustering with generalized orthogonal matching pursuit"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<unsigned> threads;
  bool normalize = false;
  std::string stop;
  std::optional<int> p;
  std::string data;
  std::optional<int> clusters;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Config file (key = value lines)");
    sub->add_option("--seed", seed, "Random seed");
    sub->add_option("--out", out, "Output directory");
    sub->add_option("--threads", threads, "Worker threads (0 = auto)");
  };
  auto* gen = app.add_subcommand("generate", "Generate a synthetic union-of-subspaces dataset");
  auto* clu = app.add_subcommand("cluster", "Cluster a dataset");
  auto* swp = app.add_subcommand("sweep", "Run a seeded parameter sweep");
  auto* bnd = app.add_subcommand("bounds", "Evaluate recovery-rate bounds over a grid");
  auto* aod = app.add_subcommand("aod-demo", "Angle-of-deviation and true-neighbor-rate curves");
  for (auto* sub : {gen, clu, swp, bnd, aod}) add_common(sub);
  for (auto* sub : {clu, swp, aod}) sub->add_option("-p", p, "Neighbors per iteration");
  for (auto* sub : {clu, swp}) sub->add_option("--stop", stop, "ratio | fixed | fixed:<M>");
  clu->add_flag("--normalize", normalize, "Scale loaded points to unit norm");
  clu->add_option("--data", data, "Directory with points.csv and optional labels.csv");
  clu->add_option("-L,--clusters", clusters, "Number of clusters (0 = estimate)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    Config cfg = config_path.empty() ? Config{} : Config::load(config_path);
    if (seed) cfg.set("seed", std::to_string(*seed));
    if (!out.empty()) cfg.set("out", out);
    if (threads) cfg.set("threads", std::to_string(*threads));
    if (normalize) cfg.set("normalize", "true");
    if (!stop.empty()) cfg.set("stop", stop);
    if (p) cfg.set("p", std::to_string(*p));
    if (!data.empty()) cfg.set("data", data);
    if (clusters) cfg.set("L", std::to_string(*clusters));

    if (gen->parsed()) {
      cmd_generate(GenerateConfig::from(cfg));
    } else if (clu->parsed()) {
      cmd_cluster(ClusterConfig::from(cfg));
    } else if (swp->parsed()) {
      cmd_sweep(SweepConfig::from(cfg));
    } else if (bnd->parsed()) {
      if (threads) cfg.get_int("threads", 0);
      cmd_bounds(BoundsConfig::from(cfg));
    } else if (aod->parsed()) {
      cmd_aod_demo(AodDemoConfig::from(cfg));
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DimensionError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "file error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace ssc::cli
