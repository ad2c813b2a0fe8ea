#include "cluster_forge/cluster_enum.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

#include "compat_bound.hpp"

namespace cluster_forge {

namespace {

struct Extender {
  const CountyGraph& graph;
  const CountySet& within;
  std::size_t n;
  CountyIndex anchor;
  std::vector<CountySet>& out;

  // sub: current connected set; ext: extension candidates; closed: sub plus
  // its neighborhood. A vertex joins ext only through the first member of
  // sub it is adjacent to, which makes every set reachable along one path.
  void extend(const CountySet& sub, CountySet ext, const CountySet& closed, std::size_t size) {
    if (size == n) {
      out.push_back(sub);
      return;
    }
    while (!ext.empty()) {
      const CountyIndex w = ext.pop_lowest();
      const CountySet& nw = graph.neighbors(w);
      CountySet fresh = (nw & within).above(anchor) - closed;
      CountySet next_sub = sub;
      next_sub.insert(w);
      extend(next_sub, ext | fresh, closed | nw, size + 1);
    }
  }
};

}  // namespace

std::vector<CountySet> enumerate_connected_subsets(const CountyGraph& graph, const CountySet& within,
                                                   std::size_t n) {
  std::vector<CountySet> out;
  if (n == 0) return out;
  within.for_each([&](CountyIndex v) {
    Extender ex{graph, within, n, v, out};
    const CountySet sub = CountySet::of({v});
    const CountySet ext = (graph.neighbors(v) & within).above(v);
    ex.extend(sub, ext, sub | graph.neighbors(v), 1);
  });
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

std::vector<CandidateCluster> enumerate_valid_clusters(const CountySet& subset, std::size_t n,
                                                       const CountyGraph& graph, const ProblemSpec& spec) {
  std::vector<CandidateCluster> out;
  for (const auto& s : enumerate_connected_subsets(graph, subset, n)) {
    const Population pop = graph.population(s);
    const DistrictInterval r = district_bounds(pop, spec);
    if (r.empty()) continue;
    out.push_back({s, pop, r, out.size()});
  }
  return out;
}

std::vector<CandidateCluster> prune_small_components(const CountySet& subset, std::size_t n,
                                                     const std::vector<CandidateCluster>& candidates,
                                                     const CountyGraph& graph) {
  CountySet doomed;
  for (const auto& comp : connected_components(graph, subset)) {
    const std::size_t k = comp.size();
    if (n < k && k < 2 * n) doomed |= comp;
  }
  if (doomed.empty()) return candidates;
  std::vector<CandidateCluster> out;
  out.reserve(candidates.size());
  // Candidates are connected, so one lying in a doomed component lies
  // entirely inside it.
  for (const auto& c : candidates)
    if (!c.counties.is_subset_of(doomed)) out.push_back(c);
  return out;
}

std::vector<CountySet> compatibility_components(std::span<const CandidateCluster> candidates) {
  std::vector<CountySet> comps;
  for (const auto& c : candidates) {
    CountySet merged = c.counties;
    std::vector<CountySet> keep;
    keep.reserve(comps.size());
    for (auto& comp : comps) {
      if (comp.intersects(merged))
        merged |= comp;
      else
        keep.push_back(comp);
    }
    keep.push_back(merged);
    comps = std::move(keep);
  }
  std::sort(comps.begin(), comps.end(),
            [](const CountySet& a, const CountySet& b) { return a.lowest() < b.lowest(); });
  return comps;
}

std::size_t compatibility_bound(std::span<const CandidateCluster> candidates, std::size_t n) {
  detail::CompatibilityBound bound;
  for (const auto& c : candidates) bound.add(c.counties);
  return bound.value(n);
}

}  // namespace cluster_forge
