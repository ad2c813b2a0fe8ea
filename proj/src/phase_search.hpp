#pragma once

// Branch-and-bound search shared by the strict and relaxed drivers.
//
// A phase assigns n-county clusters on top of each retained partial
// clustering. Every search node is a set of disjoint n-clusters whose
// leftover still passes the component-interval test; its score is
// base + depth, where base is 0 in strict mode and the relaxed measure of
// the root partial otherwise. The incumbent (best score seen by any live
// node) is shared by all workers as a monotone maximum, and a node is
// retained when score >= incumbent - fuzz. A final pass filters against the
// settled incumbent, so the retained set does not depend on scheduling.

#include <cstdint>
#include <limits>
#include <vector>

#include "cluster_forge/solver.hpp"

namespace cluster_forge::detail {

struct Partial {
  std::vector<Cluster> clusters;
  CountySet assigned;
  std::int64_t districts = 0;
};

struct PhaseConfig {
  std::size_t n = 1;
  bool relaxed = false;
  std::int64_t fuzz = 0;
  /// Only nodes whose leftover components all exceed n counties may be
  /// retained or raise the incumbent.
  bool require_live = true;
  bool prune_small_components = true;
  bool compatibility_bound = true;
  unsigned threads = 1;
};

struct PhaseResult {
  std::vector<Partial> retained;
  std::int64_t best_score = std::numeric_limits<std::int64_t>::min();
  std::size_t nodes = 0;
};

PhaseResult run_phase(const CountyGraph& graph, const ProblemSpec& spec, const std::vector<Partial>& roots,
                      const PhaseConfig& config);

/// (n + 1) * clusters + unassigned counties.
std::int64_t relaxed_measure_of(const Partial& partial, std::size_t n, std::size_t county_count);

unsigned resolve_threads(unsigned requested);

Clustering to_clustering(const Partial& partial);

/// Sorts partials by canonical text so observers and later phases see a
/// schedule-independent order.
void sort_partials(std::vector<Partial>& partials, const CountyGraph& graph);

}  // namespace cluster_forge::detail
