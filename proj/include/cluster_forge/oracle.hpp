#pragma once

// Exhaustive reference implementations for small instances. Nothing here
// shares search code with the solver: contiguity is checked with a private
// bitmask BFS and validity with the literal min*d <= pop <= max*d test.

#include <cstddef>
#include <vector>

#include "cluster_forge/clustering.hpp"

namespace cluster_forge::oracle {

inline constexpr std::size_t kDefaultCap = 10;

/// All partitions of `subset` into contiguous blocks, each block grown
/// around the smallest unplaced county. Throws InputError past `cap`.
std::vector<std::vector<CountySet>> contiguous_partitions(const CountyGraph& graph, const CountySet& subset,
                                                          std::size_t cap = kDefaultCap);

/// Same result by listing every set partition (restricted growth strings)
/// and discarding those with a disconnected block.
std::vector<std::vector<CountySet>> filtered_set_partitions(const CountyGraph& graph, const CountySet& subset,
                                                            std::size_t cap = kDefaultCap);

/// Every valid clustering of `subset` into exactly d districts, canonical.
/// The empty set with d = 0 has one (empty) clustering.
std::vector<Clustering> clusterings_of(const CountyGraph& graph, const ProblemSpec& spec, const CountySet& subset,
                                       std::int64_t d, std::size_t cap = kDefaultCap);

std::vector<Clustering> brute_force_all_clusterings(const CountyGraph& graph, const ProblemSpec& spec,
                                                    std::size_t cap = kDefaultCap);

/// Members nothing is preferred over. Empty when the instance is infeasible.
SolutionSet brute_force_optimal(const CountyGraph& graph, const ProblemSpec& spec, std::size_t cap = kDefaultCap);

/// Members with the largest cluster count. Empty when infeasible.
SolutionSet brute_force_max_clusters(const CountyGraph& graph, const ProblemSpec& spec,
                                     std::size_t cap = kDefaultCap);

}  // namespace cluster_forge::oracle
