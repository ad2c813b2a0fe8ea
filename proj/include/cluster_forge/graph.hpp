#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cluster_forge/county_set.hpp"

namespace cluster_forge {

using Population = std::int64_t;

struct County {
  std::string id;
  std::string name;
  Population population = 0;

  friend bool operator==(const County&, const County&) = default;
};

using Edge = std::pair<std::string, std::string>;

class PopulationSeries;

/// Immutable vertex-weighted adjacency graph of counties.
///
/// Counties are stored in ascending id order; a county's position in that
/// order is its CountyIndex. Edges are symmetric and irreflexive.
class CountyGraph {
 public:
  CountyGraph() = default;

  /// Throws InputError on duplicate ids, negative populations, unknown edge
  /// endpoints, self-loops, or more than CountySet::kCapacity counties.
  /// Duplicate edges are collapsed.
  CountyGraph(std::vector<County> counties, const std::vector<Edge>& edges);

  [[nodiscard]] std::size_t size() const { return counties_.size(); }
  [[nodiscard]] const County& county(CountyIndex i) const { return counties_[i]; }
  [[nodiscard]] const std::vector<County>& counties() const { return counties_; }
  [[nodiscard]] const std::string& id(CountyIndex i) const { return counties_[i].id; }
  [[nodiscard]] Population population(CountyIndex i) const { return counties_[i].population; }
  [[nodiscard]] Population population(const CountySet& s) const;
  [[nodiscard]] Population total_population() const { return total_population_; }

  [[nodiscard]] const CountySet& neighbors(CountyIndex i) const { return neighbors_[i]; }
  [[nodiscard]] std::size_t edge_count() const { return edge_count_; }
  [[nodiscard]] CountySet all() const { return CountySet::first_n(size()); }

  [[nodiscard]] std::optional<CountyIndex> index_of(std::string_view id) const;
  /// Throws InputError if any id is unknown.
  [[nodiscard]] CountySet set_of(const std::vector<std::string>& ids) const;
  [[nodiscard]] std::vector<std::string> ids_of(const CountySet& s) const;

  /// Canonical edge list: pairs (a, b) with id a < id b, sorted.
  [[nodiscard]] std::vector<Edge> edges() const;

  /// Same adjacency with populations replaced by the series values.
  [[nodiscard]] CountyGraph with_populations(const PopulationSeries& series) const;

 private:
  std::vector<County> counties_;
  std::vector<CountySet> neighbors_;
  std::size_t edge_count_ = 0;
  Population total_population_ = 0;
};

/// A labelled population snapshot keyed by county id.
class PopulationSeries {
 public:
  PopulationSeries() = default;
  PopulationSeries(std::string label, std::map<std::string, Population> populations);

  [[nodiscard]] const std::string& label() const { return label_; }
  [[nodiscard]] const std::map<std::string, Population>& populations() const { return populations_; }
  [[nodiscard]] std::size_t size() const { return populations_.size(); }

  /// Throws InputError unless the key set equals the graph's id set.
  void check_matches(const CountyGraph& graph) const;

 private:
  std::string label_;
  std::map<std::string, Population> populations_;
};

// ---------------------------------------------------------------------------
// Subgraph machinery

/// Maximal connected pieces of the subgraph induced by `subset`, ordered by
/// smallest member.
std::vector<CountySet> connected_components(const CountyGraph& graph, const CountySet& subset);

/// True iff `subset` is nonempty and induces a connected subgraph.
bool is_contiguous(const CountyGraph& graph, const CountySet& subset);

/// Members of `subset` reachable from `start` inside `subset`.
CountySet component_of(const CountyGraph& graph, const CountySet& subset, CountyIndex start);

// ---------------------------------------------------------------------------
// CSV ingestion

struct AdjacencyOptions {
  /// Reject duplicate edges instead of collapsing them with a warning.
  bool strict = false;
};

/// Parses `id,name,population`.
std::vector<County> parse_counties(std::istream& in);

/// Parses `id_a,id_b` against the given counties.
CountyGraph parse_adjacency(std::istream& in, std::vector<County> counties,
                            const AdjacencyOptions& options = {},
                            std::vector<std::string>* warnings = nullptr);

/// Parses `id,population`.
PopulationSeries parse_population_series(std::istream& in, std::string label);

void write_counties(std::ostream& out, const CountyGraph& graph);
void write_adjacency(std::ostream& out, const CountyGraph& graph);
void write_population_series(std::ostream& out, const PopulationSeries& series);

CountyGraph load_graph(const std::string& counties_path, const std::string& adjacency_path,
                       const AdjacencyOptions& options = {},
                       std::vector<std::string>* warnings = nullptr);
PopulationSeries load_population_series(const std::string& path, std::string label);

}  // namespace cluster_forge
