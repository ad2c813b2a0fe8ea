#pragma once

#include <cstdint>
#include <vector>

#include "cluster_forge/solver.hpp"

namespace cluster_forge {

/// (n + 1) * clusters + unassigned. Adding one n-county cluster raises it
/// by exactly one.
std::int64_t relaxed_measure(std::int64_t clusters, std::int64_t unassigned, std::size_t n);

/// Stage-wise search for clusterings with many clusters. Each phase n keeps
/// every partial clustering whose relaxed measure is within `fuzz` of the
/// best measure reached in that phase. Not exhaustive for the maximum
/// cluster count at small fuzz. Throws InfeasibleError like the strict
/// solver.
SolutionSet relaxed_search(const CountyGraph& graph, const ProblemSpec& spec, std::int64_t fuzz,
                           const SolverOptions& options = {});

/// Largest cluster count in the set, and how many members reach it.
struct ClusterCountSummary {
  std::size_t max_clusters = 0;
  std::size_t at_max = 0;
};
ClusterCountSummary summarize_cluster_counts(const SolutionSet& set);

/// A solution set factored into clusters shared by every member plus
/// independent regions. Each member is the backbone together with one
/// alternative from every region.
struct CompressedSolutionSet {
  struct Region {
    CountySet counties;
    /// Canonically ordered; each alternative is normalized.
    std::vector<std::vector<Cluster>> alternatives;
  };

  explicit CompressedSolutionSet(ProblemSpec s) : spec(s) {}

  ProblemSpec spec;
  std::vector<Cluster> backbone;
  std::vector<Region> regions;
  bool relaxed = false;
  std::int64_t fuzz = 0;

  /// Number of clusterings the set expands to.
  [[nodiscard]] std::size_t expanded_size() const;
};

/// Finest region split for which the cross product of alternatives is
/// exactly the input. Regions whose alternatives depend on each other are
/// merged, down to a single region holding the whole list if need be.
CompressedSolutionSet compress_solutions(const SolutionSet& set, const CountyGraph& graph);

/// The cross product of region alternatives joined with the backbone, with
/// invalid combinations dropped, in canonical order.
SolutionSet expand_solutions(const CompressedSolutionSet& compressed, const CountyGraph& graph);

/// Adds every clustering obtained by taking, for some pair of members, the
/// clusters of one member on a subset of their independent difference
/// regions and of the other elsewhere; repeats until nothing new appears.
/// Mixes that are not valid clusterings (district totals can differ per
/// region) are skipped. Reconstructs a full product from a few
/// representatives.
std::vector<Clustering> close_under_region_exchange(std::vector<Clustering> clusterings, const CountyGraph& graph,
                                                    const ProblemSpec& spec);

}  // namespace cluster_forge
