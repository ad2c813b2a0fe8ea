#include "cluster_forge/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>

#include "cluster_forge/errors.hpp"

namespace cluster_forge::oracle {

namespace {

using Mask = std::uint32_t;

// Bitmask view of the counties of `subset`, positions 0..k-1.
struct Local {
  std::vector<CountyIndex> members;
  std::vector<Mask> adjacent;
  std::vector<Population> population;

  Local(const CountyGraph& graph, const CountySet& subset, std::size_t cap) {
    members = subset.to_vector();
    if (members.size() > cap)
      throw InputError("oracle limited to " + std::to_string(cap) + " counties, got " +
                       std::to_string(members.size()));
    const std::size_t k = members.size();
    adjacent.assign(k, 0);
    population.assign(k, 0);
    for (std::size_t a = 0; a < k; ++a) population[a] = graph.population(members[a]);
    for (const auto& [x, y] : graph.edges()) {
      const auto ix = std::find_if(members.begin(), members.end(), [&](CountyIndex m) { return graph.id(m) == x; });
      const auto iy = std::find_if(members.begin(), members.end(), [&](CountyIndex m) { return graph.id(m) == y; });
      if (ix == members.end() || iy == members.end()) continue;
      const auto a = static_cast<std::size_t>(ix - members.begin());
      const auto b = static_cast<std::size_t>(iy - members.begin());
      adjacent[a] |= Mask{1} << b;
      adjacent[b] |= Mask{1} << a;
    }
  }

  [[nodiscard]] std::size_t size() const { return members.size(); }

  [[nodiscard]] bool connected(Mask block) const {
    if (block == 0) return false;
    Mask seen = block & (~block + 1);
    std::vector<std::size_t> queue{static_cast<std::size_t>(__builtin_ctz(seen))};
    while (!queue.empty()) {
      const std::size_t v = queue.back();
      queue.pop_back();
      for (std::size_t u = 0; u < size(); ++u) {
        const Mask bit = Mask{1} << u;
        if ((adjacent[v] & bit) && (block & bit) && !(seen & bit)) {
          seen |= bit;
          queue.push_back(u);
        }
      }
    }
    return seen == block;
  }

  [[nodiscard]] Population pop(Mask block) const {
    Population p = 0;
    for (std::size_t a = 0; a < size(); ++a)
      if (block & (Mask{1} << a)) p += population[a];
    return p;
  }

  [[nodiscard]] CountySet to_set(Mask block) const {
    CountySet s;
    for (std::size_t a = 0; a < size(); ++a)
      if (block & (Mask{1} << a)) s.insert(members[a]);
    return s;
  }
};

std::vector<std::vector<Mask>> anchored_partitions(const Local& local) {
  std::vector<std::vector<Mask>> out;
  std::vector<Mask> blocks;
  const Mask full = local.size() == 0 ? 0 : static_cast<Mask>((std::uint64_t{1} << local.size()) - 1);
  std::function<void(Mask)> grow = [&](Mask rest) {
    if (rest == 0) {
      out.push_back(blocks);
      return;
    }
    const Mask anchor = rest & (~rest + 1);
    const Mask others = rest & ~anchor;
    // Every subset of the other remaining counties, joined with the anchor.
    for (Mask sub = others;; sub = (sub - 1) & others) {
      const Mask block = sub | anchor;
      if (local.connected(block)) {
        blocks.push_back(block);
        grow(rest & ~block);
        blocks.pop_back();
      }
      if (sub == 0) break;
    }
  };
  grow(full);
  return out;
}

std::vector<std::vector<CountySet>> to_sets(const Local& local, const std::vector<std::vector<Mask>>& parts) {
  std::vector<std::vector<CountySet>> out;
  out.reserve(parts.size());
  for (const auto& p : parts) {
    std::vector<CountySet> sets;
    for (Mask m : p) sets.push_back(local.to_set(m));
    std::sort(sets.begin(), sets.end(), lex_less);
    out.push_back(std::move(sets));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), lex_less);
  });
  return out;
}

SolutionSet best_by(const CountyGraph& graph, const ProblemSpec& spec, std::vector<Clustering> all,
                    const std::function<bool(const Clustering&, const Clustering&)>& better) {
  SolutionSet out(spec);
  for (auto& c : all) {
    if (out.clusterings.empty() || better(c, out.clusterings.front())) {
      out.clusterings.clear();
      out.clusterings.push_back(std::move(c));
    } else if (!better(out.clusterings.front(), c)) {
      out.clusterings.push_back(std::move(c));
    }
  }
  canonicalize(out.clusterings, graph);
  if (!out.clusterings.empty()) out.signature = SizeSignature::of(out.clusterings.front());
  return out;
}

}  // namespace

std::vector<std::vector<CountySet>> contiguous_partitions(const CountyGraph& graph, const CountySet& subset,
                                                          std::size_t cap) {
  const Local local(graph, subset, cap);
  return to_sets(local, anchored_partitions(local));
}

std::vector<std::vector<CountySet>> filtered_set_partitions(const CountyGraph& graph, const CountySet& subset,
                                                            std::size_t cap) {
  const Local local(graph, subset, cap);
  const std::size_t k = local.size();
  std::vector<std::vector<Mask>> kept;
  std::vector<std::size_t> rgs(k, 0);
  std::function<void(std::size_t, std::size_t)> assign = [&](std::size_t i, std::size_t used) {
    if (i == k) {
      std::vector<Mask> blocks(used, 0);
      for (std::size_t a = 0; a < k; ++a) blocks[rgs[a]] |= Mask{1} << a;
      if (std::all_of(blocks.begin(), blocks.end(), [&](Mask b) { return local.connected(b); }))
        kept.push_back(std::move(blocks));
      return;
    }
    for (std::size_t b = 0; b <= used; ++b) {
      rgs[i] = b;
      assign(i + 1, std::max(used, b + 1));
    }
  };
  assign(0, 0);
  return to_sets(local, kept);
}

std::vector<Clustering> clusterings_of(const CountyGraph& graph, const ProblemSpec& spec, const CountySet& subset,
                                       std::int64_t d, std::size_t cap) {
  const Local local(graph, subset, cap);
  const Population lo = spec.min_district_population();
  const Population hi = spec.max_district_population();
  std::vector<Clustering> out;
  for (const auto& blocks : anchored_partitions(local)) {
    std::vector<std::int64_t> counts(blocks.size(), 0);
    std::function<void(std::size_t, std::int64_t)> pick = [&](std::size_t i, std::int64_t left) {
      if (i == blocks.size()) {
        if (left != 0) return;
        Clustering c;
        for (std::size_t b = 0; b < blocks.size(); ++b) c.clusters.push_back({local.to_set(blocks[b]), counts[b]});
        out.push_back(std::move(c));
        return;
      }
      const Population p = local.pop(blocks[i]);
      for (std::int64_t x = 1; x <= left; ++x) {
        if (lo * x <= p && p <= hi * x) {
          counts[i] = x;
          pick(i + 1, left - x);
        }
      }
    };
    pick(0, d);
  }
  canonicalize(out, graph);
  return out;
}

std::vector<Clustering> brute_force_all_clusterings(const CountyGraph& graph, const ProblemSpec& spec,
                                                    std::size_t cap) {
  return clusterings_of(graph, spec, graph.all(), spec.districts(), cap);
}

SolutionSet brute_force_optimal(const CountyGraph& graph, const ProblemSpec& spec, std::size_t cap) {
  return best_by(graph, spec, brute_force_all_clusterings(graph, spec, cap), [](const auto& a, const auto& b) {
    return compare_signatures(SizeSignature::of(a), SizeSignature::of(b)) == Preference::kFirst;
  });
}

SolutionSet brute_force_max_clusters(const CountyGraph& graph, const ProblemSpec& spec, std::size_t cap) {
  return best_by(graph, spec, brute_force_all_clusterings(graph, spec, cap),
                 [](const auto& a, const auto& b) { return a.size() > b.size(); });
}

}  // namespace cluster_forge::oracle
