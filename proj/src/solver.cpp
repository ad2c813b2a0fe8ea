#include "cluster_forge/solver.hpp"

#include <algorithm>

#include "cluster_forge/errors.hpp"
#include "phase_search.hpp"

namespace cluster_forge {

namespace {

using detail::Partial;

bool complete(const Partial& p, const CountyGraph& graph) { return p.assigned.size() == graph.size(); }

void report(const SolverOptions& options, const std::string& line) {
  if (options.log) options.log(line);
}

}  // namespace

std::vector<std::vector<Cluster>> max_cluster_sets(const CountySet& subset, std::int64_t d, std::size_t n,
                                                   const CountyGraph& graph, const ProblemSpec& spec,
                                                   const SolverOptions& options) {
  Partial root;
  root.assigned = graph.all() - subset;
  root.districts = spec.districts() - d;

  detail::PhaseConfig config;
  config.n = n;
  config.require_live = false;
  config.prune_small_components = options.prune_small_components;
  config.compatibility_bound = options.compatibility_bound;
  config.threads = options.threads;
  auto result = detail::run_phase(graph, spec, {root}, config);

  std::vector<std::vector<Cluster>> out;
  out.reserve(result.retained.size());
  for (auto& p : result.retained) out.push_back(detail::to_clustering(p).clusters);
  return out;
}

SolutionSet optimal_clusterings(const CountyGraph& graph, const ProblemSpec& spec, const SolverOptions& options) {
  if (!can_cluster(graph.all(), spec.districts(), graph, spec)) {
    const auto range = clusterable_range(graph.all(), graph, spec);
    throw InfeasibleError(range.empty()
                              ? std::string("some component of the graph has no feasible district count")
                              : "the graph supports between " + std::to_string(range.lo) + " and " +
                                    std::to_string(range.hi) + " districts, not " +
                                    std::to_string(spec.districts()));
  }

  std::vector<Partial> partials(1);
  detail::PhaseConfig config;
  config.prune_small_components = options.prune_small_components;
  config.compatibility_bound = options.compatibility_bound;
  config.threads = options.threads;

  for (std::size_t n = 1; std::any_of(partials.begin(), partials.end(),
                                      [&](const Partial& p) { return !complete(p, graph); });
       ++n) {
    config.n = n;
    auto result = detail::run_phase(graph, spec, partials, config);
    if (result.retained.empty()) throw InfeasibleError("no partial clustering survived phase " + std::to_string(n));
    partials = std::move(result.retained);
    report(options, "phase " + std::to_string(n) + ": " + std::to_string(result.best_score) + " clusters of size " +
                        std::to_string(n) + ", " + std::to_string(partials.size()) + " partial solutions, " +
                        std::to_string(result.nodes) + " nodes");
    if (options.on_phase) {
      std::vector<Clustering> view;
      view.reserve(partials.size());
      for (const auto& p : partials) view.push_back(detail::to_clustering(p));
      options.on_phase(n, view);
    }
  }

  SolutionSet out(spec);
  out.clusterings.reserve(partials.size());
  for (const auto& p : partials) out.clusterings.push_back(detail::to_clustering(p));
  canonicalize(out.clusterings, graph);
  if (options.dedupe_partitions) dedupe_partitions(out.clusterings);
  out.signature = SizeSignature::of(out.clusterings.front());
  return out;
}

}  // namespace cluster_forge
