#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cluster_forge/feasibility.hpp"

namespace cluster_forge {

/// A contiguous n-county set whose district interval is nonempty.
struct CandidateCluster {
  CountySet counties;
  Population population = 0;
  DistrictInterval interval;
  /// Position in the deterministic enumeration order.
  std::size_t index = 0;
};

/// Every connected n-subset of `within`, each exactly once, sorted by
/// ascending member list. Uses anchored extension (each set is grown from
/// its smallest member, only adding larger vertices).
std::vector<CountySet> enumerate_connected_subsets(const CountyGraph& graph, const CountySet& within,
                                                   std::size_t n);

/// Contiguous n-subsets of `subset` with a nonempty district interval, in
/// lexicographic order of sorted ids, indexed 0..J-1.
std::vector<CandidateCluster> enumerate_valid_clusters(const CountySet& subset, std::size_t n,
                                                       const CountyGraph& graph, const ProblemSpec& spec);

/// Drops candidates lying inside a component S_k of `subset` with
/// n < |S_k| < 2n. Assigning such a candidate would strand fewer than n
/// counties, and no cluster smaller than n can be formed any more. Order
/// (and indices) of the survivors is preserved.
std::vector<CandidateCluster> prune_small_components(const CountySet& subset, std::size_t n,
                                                     const std::vector<CandidateCluster>& candidates,
                                                     const CountyGraph& graph);

/// Components of the graph on candidate counties where two counties are
/// linked whenever some candidate contains both.
std::vector<CountySet> compatibility_components(std::span<const CandidateCluster> candidates);

/// Upper bound on how many more disjoint n-clusters can be picked from
/// `candidates`: sum over compatibility components of floor(|V'_k| / n).
std::size_t compatibility_bound(std::span<const CandidateCluster> candidates, std::size_t n);

}  // namespace cluster_forge
