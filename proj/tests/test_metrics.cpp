#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <random>

#include "ssc/datagen.hpp"
#include "ssc/gomp.hpp"
#include "ssc/metrics.hpp"
#include "test_helpers.hpp"

using namespace ssc;

namespace {

// Brute-force CCR over every injective relabeling of predicted clusters.
double ccr_oracle(const std::vector<int>& pred, const std::vector<int>& truth) {
  const int kp = *std::max_element(pred.begin(), pred.end());
  const int kt = *std::max_element(truth.begin(), truth.end());
  const int k = std::max(kp, kt);
  std::vector<int> perm(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
  std::size_t best = 0;
  do {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) hits += perm[static_cast<std::size_t>(pred[i] - 1)] == truth[i];
    best = std::max(best, hits);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(pred.size());
}

CoefficientMatrix from_entries(Eigen::Index n, const std::vector<std::tuple<int, int, double>>& entries) {
  CoefficientMatrix c{Matrix::Zero(n, n)};
  for (const auto& [i, j, v] : entries) c.values(i, j) = v;
  return c;
}

}  // namespace

TEST_CASE("tnr examples") {
  const std::vector<int> labels{1, 1, 2, 2};
  CHECK(tnr(from_entries(4, {{0, 1, 0.5}, {1, 0, -1.0}, {2, 3, 0.2}}), labels).value == 1.0);
  CHECK(tnr(from_entries(4, {{0, 2, 0.5}, {3, 1, 1.0}}), labels).value == 0.0);
  CHECK(tnr(from_entries(4, {{0, 1, 0.5}, {1, 0, 0.1}, {2, 3, 0.3}, {0, 3, 0.9}}), labels).value == 0.75);
  const TnrResult empty = tnr(CoefficientMatrix{Matrix::Zero(4, 4)}, labels);
  CHECK(empty.value == 1.0);
  CHECK(empty.vacuous);
  CHECK_THROWS(tnr(CoefficientMatrix{Matrix::Zero(3, 3)}, labels));
}

TEST_CASE("anrn examples") {
  CoefficientMatrix six{Matrix::Zero(10, 10)};
  for (int j = 0; j < 10; ++j)
    for (int k = 1; k <= 6; ++k) six.values((j + k) % 10, j) = 0.1 * k;
  CHECK(anrn(six) == 6.0);
  CHECK(anrn(from_entries(2, {{1, 0, 1.0}})) == 0.5);
  CoefficientMatrix mixed{Matrix::Zero(5, 2)};
  mixed.values.col(0).head(2).setOnes();
  mixed.values.col(1).head(4).setOnes();
  CHECK(anrn(mixed) == 3.0);  // two columns with 2 and 4 nonzeros
  CHECK(anrn(CoefficientMatrix{Matrix::Zero(3, 3)}) == 0.0);
}

TEST_CASE("tnr and anrn read only the sparsity pattern") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  CoefficientMatrix c{Matrix::Zero(12, 12)};
  for (int k = 0; k < 40; ++k) c.values(static_cast<Eigen::Index>(rng() % 12), static_cast<Eigen::Index>(rng() % 12)) = normal(rng);
  std::vector<int> labels(12);
  for (int i = 0; i < 12; ++i) labels[static_cast<std::size_t>(i)] = 1 + i % 3;
  CoefficientMatrix scaled = c;
  for (Eigen::Index j = 0; j < 12; ++j) scaled.values.col(j) *= scale(rng);
  CHECK(tnr(c, labels).value == tnr(scaled, labels).value);
  CHECK(anrn(c) == anrn(scaled));
}

TEST_CASE("ccr examples") {
  const std::vector<int> truth{1, 1, 1, 2, 2, 2, 3, 3, 3, 3};
  CHECK(ccr(truth, truth) == 1.0);
  const std::vector<int> renamed{3, 3, 3, 1, 1, 1, 2, 2, 2, 2};
  CHECK(ccr(renamed, truth) == 1.0);
  std::vector<int> one_off = truth;
  one_off[4] = 3;
  CHECK(ccr(one_off, truth) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(ccr_oracle(one_off, truth) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK_THROWS(ccr(std::vector<int>{1, 2}, truth));
}

TEST_CASE("ccr matches the brute-force oracle, including mismatched cluster counts") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const int kp = 1 + static_cast<int>(rng() % 6);
    const int kt = 1 + static_cast<int>(rng() % 6);
    const int n = 5 + static_cast<int>(rng() % 30);
    std::vector<int> pred(static_cast<std::size_t>(n)), truth(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      pred[static_cast<std::size_t>(i)] = 1 + static_cast<int>(rng() % static_cast<unsigned>(kp));
      truth[static_cast<std::size_t>(i)] = 1 + static_cast<int>(rng() % static_cast<unsigned>(kt));
    }
    CHECK(ccr(pred, truth) == doctest::Approx(ccr_oracle(pred, truth)).epsilon(1e-15));
  }
}

TEST_CASE("ccr is invariant to relabeling, also above the exhaustive limit") {
  std::mt19937_64 rng(3);
  for (int k : {3, 8, 9, 12}) {
    std::vector<int> truth(200), pred(200);
    for (int i = 0; i < 200; ++i) {
      truth[static_cast<std::size_t>(i)] = 1 + i % k;
      pred[static_cast<std::size_t>(i)] = rng() % 5 == 0 ? 1 + static_cast<int>(rng() % static_cast<unsigned>(k)) : truth[static_cast<std::size_t>(i)];
    }
    std::vector<int> names(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) names[static_cast<std::size_t>(i)] = i + 1;
    std::shuffle(names.begin(), names.end(), rng);
    std::vector<int> renamed(200);
    for (int i = 0; i < 200; ++i) renamed[static_cast<std::size_t>(i)] = names[static_cast<std::size_t>(pred[static_cast<std::size_t>(i)] - 1)];
    CHECK(ccr(renamed, truth) == ccr(pred, truth));
  }
}

TEST_CASE("Hungarian assignment equals the exhaustive optimum") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unif(0.0, 10.0);
  for (int t = 0; t < 100; ++t) {
    const int k = 1 + t % 7;
    Matrix w(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) w(i, j) = t % 2 ? std::floor(unif(rng)) : unif(rng);
    const std::vector<int> match = max_weight_assignment(w);
    double got = 0.0;
    std::vector<int> seen(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i) {
      got += w(i, match[static_cast<std::size_t>(i)]);
      ++seen[static_cast<std::size_t>(match[static_cast<std::size_t>(i)])];
    }
    for (int s : seen) CHECK(s == 1);
    std::vector<int> perm(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = i;
    double best = -1.0;
    do {
      double s = 0.0;
      for (int i = 0; i < k; ++i) s += w(i, perm[static_cast<std::size_t>(i)]);
      best = std::max(best, s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(got == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("aod examples and scale invariance") {
  const Matrix u = Matrix::Identity(4, 2);
  Vector inside(4), outside(4), diag(4);
  inside << 1, 2, 0, 0;
  outside << 0, 0, 3, 1;
  diag << 1, 0, 1, 0;
  CHECK(aod(inside, u) == 0.0);
  CHECK(aod(outside, u) == doctest::Approx(std::numbers::pi / 2));
  CHECK(aod(diag, u) == doctest::Approx(std::numbers::pi / 4).epsilon(1e-15));
  CHECK(aod(Vector::Zero(4), u) == 0.0);
  Vector r(4);
  r << 0.3, -1.2, 0.7, 2.0;
  for (double a : {1e-3, 0.5, 7.0, 1e4}) CHECK(aod(a * r, u) == doctest::Approx(aod(r, u)).epsilon(1e-14));
}

TEST_CASE("per-neighbor true rate") {
  SUBCASE("noiseless orthogonal subspaces give all ones") {
    Rng rng(5);
    const SubspaceModel model = make_orthogonal_subspaces(60, 6, 3, rng);
    const DataSet data = sample_points(model, {15, 15, 15}, rng);
    const auto out = regress_all(data, StopPolicy::fixed(3, 2), 1, &model);
    const auto rates = per_neighbor_true_rate(out.traces, *data.labels);
    REQUIRE(rates.size() == 6);
    for (double v : rates) CHECK(v == 1.0);
    for (double a : mean_aod_per_index(out.traces)) CHECK(a < 1e-6);
  }
  SUBCASE("equal labels give all ones") {
    Rng rng(6);
    const SubspaceModel model = make_orthogonal_subspaces(20, 3, 2, rng);
    DataSet data = add_noise(sample_points(model, {6, 6}, rng), 0.8, rng);
    const auto out = regress_all(data, StopPolicy::fixed(4, 1));
    const std::vector<int> same(12, 1);
    for (double v : per_neighbor_true_rate(out.traces, same)) CHECK(v == 1.0);
  }
  SUBCASE("single trace with a wrong first neighbor") {
    GompTrace trace;
    trace.point = 0;
    IterationRecord a, b;
    a.selected = {2};
    b.selected = {1};
    trace.iterations = {a, b};
    const std::vector<int> labels{1, 1, 2};
    const GompTrace traces[] = {trace};
    const auto rates = per_neighbor_true_rate(traces, labels);
    REQUIRE(rates.size() == 2);
    CHECK(rates[0] == 0.0);
    CHECK(rates[1] == 1.0);
  }
  SUBCASE("discarded batches are not counted") {
    GompTrace trace;
    IterationRecord a, b;
    a.selected = {1};
    b.selected = {2};
    trace.iterations = {a, b};
    trace.discarded_last_batch = true;
    const std::vector<int> labels{1, 1, 2};
    const GompTrace traces[] = {trace};
    CHECK(per_neighbor_true_rate(traces, labels).size() == 1);
  }
}

TEST_CASE("mean AoD per index uses the residual that selected each batch") {
  GompTrace trace;
  trace.initial.aod = 0.1;
  IterationRecord a, b;
  a.selected = {1, 2};
  a.aod = 0.4;
  b.selected = {3, 4};
  b.aod = 0.9;
  trace.iterations = {a, b};
  const GompTrace traces[] = {trace};
  const auto curve = mean_aod_per_index(traces);
  REQUIRE(curve.size() == 4);
  CHECK(curve == std::vector<double>{0.1, 0.1, 0.4, 0.4});
}
