#include "cluster_forge/relaxed.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "cluster_forge/errors.hpp"
#include "phase_search.hpp"

namespace cluster_forge {

namespace {

using detail::Partial;

bool has_cluster(const Clustering& c, const Cluster& x) {
  return std::find(c.clusters.begin(), c.clusters.end(), x) != c.clusters.end();
}

// Union-find over county indices, labelled by smallest member.
class CountyUnion {
 public:
  explicit CountyUnion(std::size_t size) : parent_(size) { std::iota(parent_.begin(), parent_.end(), 0); }

  void join(const CountySet& s) {
    if (s.empty()) return;
    const CountyIndex root = s.lowest();
    s.for_each([&](CountyIndex i) { unite(root, i); });
  }

  [[nodiscard]] std::vector<CountySet> groups(const CountySet& members) {
    std::map<CountyIndex, CountySet> by_root;
    members.for_each([&](CountyIndex i) { by_root[find(i)].insert(i); });
    std::vector<CountySet> out;
    for (auto& [root, s] : by_root) out.push_back(s);
    std::sort(out.begin(), out.end(), [](const CountySet& a, const CountySet& b) { return a.lowest() < b.lowest(); });
    return out;
  }

 private:
  CountyIndex find(CountyIndex i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  void unite(CountyIndex a, CountyIndex b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

  std::vector<CountyIndex> parent_;
};

std::vector<Cluster> restrict_to(const Clustering& c, const CountySet& region) {
  std::vector<Cluster> out;
  for (const auto& x : c.clusters)
    if (x.counties.is_subset_of(region)) out.push_back(x);
  return out;
}

std::string key_of(const std::vector<Cluster>& clusters, const CountyGraph& graph) {
  return canonical_text(Clustering{clusters}, graph);
}

// Distinct restrictions of the members to `region`, keyed canonically.
std::map<std::string, std::vector<Cluster>> alternatives_on(const std::vector<Clustering>& members,
                                                            const CountySet& region, const CountyGraph& graph) {
  std::map<std::string, std::vector<Cluster>> out;
  for (const auto& m : members) {
    Clustering r{restrict_to(m, region)};
    r.normalize();
    out.emplace(key_of(r.clusters, graph), std::move(r.clusters));
  }
  return out;
}

// Saturating product of alternative counts.
std::size_t product_of(const std::vector<std::size_t>& counts) {
  std::size_t p = 1;
  for (auto c : counts) {
    if (c != 0 && p > std::numeric_limits<std::size_t>::max() / c) return std::numeric_limits<std::size_t>::max();
    p *= c;
  }
  return p;
}

}  // namespace

std::int64_t relaxed_measure(std::int64_t clusters, std::int64_t unassigned, std::size_t n) {
  return static_cast<std::int64_t>(n + 1) * clusters + unassigned;
}

SolutionSet relaxed_search(const CountyGraph& graph, const ProblemSpec& spec, std::int64_t fuzz,
                           const SolverOptions& options) {
  if (fuzz < 0) throw InputError("fuzz must be >= 0");
  if (!can_cluster(graph.all(), spec.districts(), graph, spec))
    throw InfeasibleError("the graph cannot be clustered into " + std::to_string(spec.districts()) + " districts");

  std::vector<Partial> partials(1);
  detail::PhaseConfig config;
  config.relaxed = true;
  config.fuzz = fuzz;
  config.prune_small_components = options.prune_small_components;
  config.compatibility_bound = options.compatibility_bound;
  config.threads = options.threads;

  auto incomplete = [&](const Partial& p) { return p.assigned.size() != graph.size(); };
  for (std::size_t n = 1; std::any_of(partials.begin(), partials.end(), incomplete); ++n) {
    config.n = n;
    auto result = detail::run_phase(graph, spec, partials, config);
    if (result.retained.empty()) throw InfeasibleError("no partial clustering survived phase " + std::to_string(n));
    partials = std::move(result.retained);
    if (options.log)
      options.log("phase " + std::to_string(n) + ": best measure " + std::to_string(result.best_score) + ", " +
                  std::to_string(partials.size()) + " partial solutions, " + std::to_string(result.nodes) + " nodes");
    if (options.on_phase) {
      std::vector<Clustering> view;
      for (const auto& p : partials) view.push_back(detail::to_clustering(p));
      options.on_phase(n, view);
    }
  }

  SolutionSet out(spec);
  out.relaxed = true;
  out.fuzz = fuzz;
  for (const auto& p : partials) out.clusterings.push_back(detail::to_clustering(p));
  canonicalize(out.clusterings, graph);
  if (options.dedupe_partitions) dedupe_partitions(out.clusterings);
  const auto best = std::max_element(out.clusterings.begin(), out.clusterings.end(),
                                     [](const Clustering& a, const Clustering& b) { return a.size() < b.size(); });
  out.signature = SizeSignature::of(*best);
  return out;
}

ClusterCountSummary summarize_cluster_counts(const SolutionSet& set) {
  ClusterCountSummary s;
  for (const auto& c : set.clusterings) s.max_clusters = std::max(s.max_clusters, c.size());
  for (const auto& c : set.clusterings) s.at_max += c.size() == s.max_clusters ? 1 : 0;
  return s;
}

std::size_t CompressedSolutionSet::expanded_size() const {
  std::vector<std::size_t> counts;
  for (const auto& r : regions) counts.push_back(r.alternatives.size());
  return product_of(counts);
}

CompressedSolutionSet compress_solutions(const SolutionSet& set, const CountyGraph& graph) {
  CompressedSolutionSet out(set.spec);
  out.relaxed = set.relaxed;
  out.fuzz = set.fuzz;
  if (set.clusterings.empty()) {
    out.regions.push_back({graph.all(), {}});
    return out;
  }

  const auto& first = set.clusterings.front();
  for (const auto& x : first.clusters)
    if (std::all_of(set.clusterings.begin(), set.clusterings.end(), [&](const Clustering& c) { return has_cluster(c, x); }))
      out.backbone.push_back(x);
  Clustering bb{out.backbone};
  bb.normalize();
  out.backbone = bb.clusters;

  CountyUnion uf(graph.size());
  CountySet loose;
  for (const auto& c : set.clusterings)
    for (const auto& x : c.clusters)
      if (!has_cluster(bb, x)) {
        uf.join(x.counties);
        loose |= x.counties;
      }
  std::vector<CountySet> regions = uf.groups(loose);

  // Merge regions until the cross product is exactly the input.
  for (;;) {
    std::vector<std::size_t> counts;
    for (const auto& r : regions) counts.push_back(alternatives_on(set.clusterings, r, graph).size());
    if (product_of(counts) == set.clusterings.size()) break;
    std::size_t a = 0, b = 1;
    bool found = false;
    for (std::size_t i = 0; i < regions.size() && !found; ++i)
      for (std::size_t j = i + 1; j < regions.size() && !found; ++j) {
        const auto joint = alternatives_on(set.clusterings, regions[i] | regions[j], graph).size();
        if (joint < counts[i] * counts[j]) {
          a = i;
          b = j;
          found = true;
        }
      }
    regions[a] |= regions[b];
    regions.erase(regions.begin() + static_cast<std::ptrdiff_t>(b));
  }

  for (const auto& r : regions) {
    CompressedSolutionSet::Region region{r, {}};
    for (auto& [key, alt] : alternatives_on(set.clusterings, r, graph)) region.alternatives.push_back(std::move(alt));
    out.regions.push_back(std::move(region));
  }
  return out;
}

SolutionSet expand_solutions(const CompressedSolutionSet& compressed, const CountyGraph& graph) {
  SolutionSet out(compressed.spec);
  out.relaxed = compressed.relaxed;
  out.fuzz = compressed.fuzz;
  std::vector<std::size_t> pick(compressed.regions.size(), 0);
  const bool none = std::any_of(compressed.regions.begin(), compressed.regions.end(),
                                [](const auto& r) { return r.alternatives.empty(); });
  while (!none) {
    Clustering c{compressed.backbone};
    for (std::size_t r = 0; r < pick.size(); ++r) {
      const auto& alt = compressed.regions[r].alternatives[pick[r]];
      c.clusters.insert(c.clusters.end(), alt.begin(), alt.end());
    }
    if (validate_clustering(c, graph, compressed.spec).empty()) out.clusterings.push_back(std::move(c));
    std::size_t r = 0;
    for (; r < pick.size(); ++r) {
      if (++pick[r] < compressed.regions[r].alternatives.size()) break;
      pick[r] = 0;
    }
    if (r == pick.size()) break;
  }
  canonicalize(out.clusterings, graph);
  if (!out.clusterings.empty()) {
    if (out.relaxed) {
      const auto best = std::max_element(out.clusterings.begin(), out.clusterings.end(),
                                         [](const Clustering& a, const Clustering& b) { return a.size() < b.size(); });
      out.signature = SizeSignature::of(*best);
    } else {
      out.signature = SizeSignature::of(out.clusterings.front());
    }
  }
  return out;
}

std::vector<Clustering> close_under_region_exchange(std::vector<Clustering> clusterings, const CountyGraph& graph,
                                                    const ProblemSpec& spec) {
  canonicalize(clusterings, graph);
  std::set<std::string> known;
  for (const auto& c : clusterings) known.insert(canonical_text(c, graph));

  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t count = clusterings.size();
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = i + 1; j < count; ++j) {
        const Clustering a = clusterings[i];
        const Clustering b = clusterings[j];
        CountyUnion uf(graph.size());
        CountySet differ;
        for (const auto* side : {&a, &b})
          for (const auto& x : side->clusters)
            if (!has_cluster(side == &a ? b : a, x)) {
              uf.join(x.counties);
              differ |= x.counties;
            }
        const auto regions = uf.groups(differ);
        if (regions.size() < 2 || regions.size() > 20) continue;
        for (std::uint32_t mask = 1; mask + 1 < (std::uint32_t{1} << regions.size()); ++mask) {
          CountySet from_b;
          for (std::size_t r = 0; r < regions.size(); ++r)
            if (mask & (std::uint32_t{1} << r)) from_b |= regions[r];
          Clustering mix;
          for (const auto& x : a.clusters)
            if (!x.counties.is_subset_of(from_b)) mix.clusters.push_back(x);
          for (const auto& x : b.clusters)
            if (x.counties.is_subset_of(from_b)) mix.clusters.push_back(x);
          mix.normalize();
          if (!validate_clustering(mix, graph, spec).empty()) continue;
          if (known.insert(canonical_text(mix, graph)).second) {
            clusterings.push_back(std::move(mix));
            grew = true;
          }
        }
      }
    }
  }
  canonicalize(clusterings, graph);
  return clusterings;
}

}  // namespace cluster_forge
