#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cluster_forge/clustering.hpp"

namespace cluster_forge {

/// Called after phase n with the partial clusterings retained by it.
using PhaseObserver = std::function<void(std::size_t n, const std::vector<Clustering>& retained)>;
using LogSink = std::function<void(const std::string&)>;

struct SolverOptions {
  /// Drop candidates inside components of size strictly between n and 2n.
  bool prune_small_components = true;
  /// Skip branches whose compatibility bound cannot reach the incumbent.
  bool compatibility_bound = true;
  /// Worker threads; 0 means the hardware concurrency.
  unsigned threads = 1;
  /// Collapse clusterings that differ only in district counts.
  bool dedupe_partitions = false;
  PhaseObserver on_phase;
  LogSink log;
};

/// All maximum-cardinality sets of disjoint n-county clusters (each with a
/// chosen district count) inside `subset` such that the leftover counties
/// can still be clustered into the leftover districts. Returns one empty set
/// when the maximum is zero but `subset` is clusterable into d districts,
/// and nothing when it is not. Sets are ordered canonically.
std::vector<std::vector<Cluster>> max_cluster_sets(const CountySet& subset, std::int64_t d, std::size_t n,
                                                   const CountyGraph& graph, const ProblemSpec& spec,
                                                   const SolverOptions& options = {});

/// Every clustering over which no other valid clustering is preferred.
/// Throws InfeasibleError if the graph has no valid clustering into D
/// districts.
SolutionSet optimal_clusterings(const CountyGraph& graph, const ProblemSpec& spec,
                                const SolverOptions& options = {});

}  // namespace cluster_forge
