#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "cluster_forge/feasibility.hpp"

namespace cluster_forge {

/// A county set together with the number of districts drawn inside it.
struct Cluster {
  CountySet counties;
  std::int64_t districts = 0;

  [[nodiscard]] std::size_t size() const { return counties.size(); }
  friend bool operator==(const Cluster&, const Cluster&) = default;
};

/// A set of clusters. Complete clusterings partition the whole graph.
struct Clustering {
  std::vector<Cluster> clusters;

  /// Orders clusters by smallest member.
  void normalize();
  [[nodiscard]] std::size_t size() const { return clusters.size(); }
  [[nodiscard]] std::int64_t total_districts() const;
  [[nodiscard]] CountySet counties() const;
  /// The county partition with district counts dropped, normalized.
  [[nodiscard]] std::vector<CountySet> partition() const;

  friend bool operator==(const Clustering&, const Clustering&) = default;
};

/// counts[k - 1] is the number of k-county clusters. Trailing zeros are
/// insignificant.
class SizeSignature {
 public:
  SizeSignature() = default;
  explicit SizeSignature(std::vector<std::int64_t> counts);

  static SizeSignature of(const Clustering& clustering);

  /// Number of n-county clusters, n >= 1.
  [[nodiscard]] std::int64_t count(std::size_t n) const;
  [[nodiscard]] std::int64_t total_clusters() const;
  [[nodiscard]] const std::vector<std::int64_t>& counts() const { return counts_; }

  friend bool operator==(const SizeSignature& a, const SizeSignature& b);

 private:
  void trim();
  std::vector<std::int64_t> counts_;
};

enum class Preference { kFirst, kSecond, kTie };

/// Hierarchical comparison: more 1-county clusters wins, then more
/// 2-county clusters, and so on.
Preference compare_signatures(const SizeSignature& a, const SizeSignature& b);

/// Human-readable violations; empty iff the clustering is disjoint, covers
/// the graph, uses exactly D districts, and every cluster is contiguous and
/// population-valid.
std::vector<std::string> validate_clustering(const Clustering& clustering, const CountyGraph& graph,
                                             const ProblemSpec& spec);

/// Canonical compact JSON text of a clustering; also its sort key.
std::string canonical_text(const Clustering& clustering, const CountyGraph& graph);

/// Normalizes every member, sorts by canonical text, removes duplicates.
void canonicalize(std::vector<Clustering>& clusterings, const CountyGraph& graph);

/// Keeps the first clustering (in canonical order) for each distinct county
/// partition. Input must be canonical.
void dedupe_partitions(std::vector<Clustering>& clusterings);

/// A canonical collection of clusterings for one instance.
struct SolutionSet {
  explicit SolutionSet(ProblemSpec s) : spec(s) {}

  ProblemSpec spec;
  std::vector<Clustering> clusterings;
  /// Strict mode: the signature shared by every member. Relaxed mode: the
  /// signature of the first member with the most clusters.
  SizeSignature signature;
  bool relaxed = false;
  std::int64_t fuzz = 0;

  [[nodiscard]] bool empty() const { return clusterings.empty(); }
  [[nodiscard]] std::size_t size() const { return clusterings.size(); }
};

}  // namespace cluster_forge
