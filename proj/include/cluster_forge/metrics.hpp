#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cluster_forge/clustering.hpp"

namespace cluster_forge {

/// Percentage of clusters not shared: 100 * (1 - |A n B| / ((|A| + |B|) / 2)).
/// Clusters match on counties and district count unless `ignore_districts`.
/// Throws InputError when the clusterings cover different counties.
double different_clusters(const Clustering& a, const Clustering& b, bool ignore_districts = false);

/// Variation of information between the county partitions, in bits per
/// county. Throws InputError on different or empty universes.
double variation_of_information(const Clustering& a, const Clustering& b);

/// (100 / n) * sum |X_i - Y_i| / ((X_i + Y_i) / 2), percent per county.
/// Throws InputError on mismatched keys or a county with X_i + Y_i = 0.
double average_population_change(const PopulationSeries& x, const PopulationSeries& y);

struct StabilityRecord {
  std::string from_label;
  std::string to_label;
  double dc = 0;
  double vi = 0;
  double apc = 0;
  /// Absent when apc is zero.
  std::optional<double> vi_over_apc;
  /// Position of the chosen clustering in the target solution set.
  std::size_t chosen_index = 0;
  Clustering chosen;
};

/// Greedy chain through successive solution sets: from the current
/// clustering, move to the member of the next set with the fewest different
/// clusters, then the smallest VI, then the earliest in canonical order.
/// `sets[k]` must come from `series[k]`. Throws InputError on size mismatch
/// or an empty set.
std::vector<StabilityRecord> stability_chain(const std::vector<SolutionSet>& sets,
                                             const std::vector<PopulationSeries>& series, const Clustering& initial,
                                             bool ignore_districts = false);

struct DeviationReport {
  struct Entry {
    Cluster cluster;
    Population population = 0;
    /// 100 * (pop * D - pop(G) * d) / (pop(G) * d).
    double percent = 0;
  };
  std::vector<Entry> entries;
  double mean_absolute = 0;
  double mean_signed = 0;
};

/// Per-cluster deviation of the average district population from ideal.
DeviationReport population_deviation(const Clustering& clustering, const CountyGraph& graph, const ProblemSpec& spec);

/// Sum of (d - 1) over clusters, i.e. D minus the number of clusters.
std::int64_t split_lower_bound(const Clustering& clustering);

/// Sum of (|C| - 1) over clusters, i.e. |G| minus the number of clusters.
std::int64_t traversal_lower_bound(const Clustering& clustering);

}  // namespace cluster_forge
