#pragma once

#include <string>
#include <vector>

#include "cluster_forge/clustering.hpp"

namespace cluster_forge::testing {

inline std::string fixture(const std::string& rel) { return std::string(CF_FIXTURE_DIR) + "/" + rel; }

/// Graph from (id, population) pairs and id edges; names repeat the ids.
inline CountyGraph make_graph(const std::vector<std::pair<std::string, Population>>& pops,
                              const std::vector<Edge>& edges) {
  std::vector<County> counties;
  for (const auto& [id, p] : pops) counties.push_back({id, id, p});
  return CountyGraph(counties, edges);
}

inline CountyGraph triangle() { return make_graph({{"A", 100}, {"B", 100}, {"C", 100}}, {{"A", "B"}, {"A", "C"}, {"B", "C"}}); }

inline CountyGraph path(Population a, Population b, Population c) {
  return make_graph({{"A", a}, {"B", b}, {"C", c}}, {{"A", "B"}, {"B", "C"}});
}

inline Cluster cl(const CountyGraph& g, const std::vector<std::string>& ids, std::int64_t d) {
  return {g.set_of(ids), d};
}

inline Clustering clustering(std::vector<Cluster> clusters) {
  Clustering c{std::move(clusters)};
  c.normalize();
  return c;
}

inline std::vector<std::string> texts(const std::vector<Clustering>& cs, const CountyGraph& g) {
  std::vector<std::string> out;
  for (const auto& c : cs) out.push_back(canonical_text(c, g));
  return out;
}

}  // namespace cluster_forge::testing
