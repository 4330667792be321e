#include "ssc/pipeline.hpp"

namespace ssc {

ClusteringResult cluster_dataset(const DataSet& data, const ClusteringOptions& options) {
  ClusteringResult out;
  out.coefficients = sparse_representation(data, options.policy, options.threads);
  out.graph = build_similarity(out.coefficients);

  const int clusters = options.num_clusters > 0 ? options.num_clusters
                                                : estimate_num_clusters(out.graph, options.max_clusters);
  Rng rng(stream_seed(options.seed, {0x5eed}));
  out.labels = spectral_cluster(out.graph, clusters, options.restarts, rng);

  out.metrics.anrn = anrn(out.coefficients);
  if (data.labels) {
    const auto t = tnr(out.coefficients, *data.labels);
    out.metrics.tnr = t.value;
    out.metrics.tnr_vacuous = t.vacuous;
    out.metrics.ccr = ccr(out.labels.assignment, *data.labels);
  }
  return out;
}

}  // namespace ssc
