#include "phase_search.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "cluster_forge/cluster_enum.hpp"
#include "compat_bound.hpp"

namespace cluster_forge::detail {

namespace {

constexpr std::int64_t kNoScore = std::numeric_limits<std::int64_t>::min() / 4;

using CandidateId = std::uint32_t;

struct Root {
  const Partial* partial = nullptr;
  CountySet remaining;
  std::int64_t districts_left = 0;
  std::int64_t base = 0;
  std::vector<CandidateCluster> table;
  std::vector<CandidateId> top;
  bool viable = false;
};

struct Choice {
  CandidateId candidate;
  std::int64_t districts;
};

struct Record {
  std::size_t root;
  std::int64_t score;
  std::vector<Choice> chosen;
};

template <typename F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
  if (count == 0) return;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i, 0u);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i, w);
    });
  }
}

class Search {
 public:
  Search(const CountyGraph& graph, const ProblemSpec& spec, const PhaseConfig& config)
      : graph_(graph), spec_(spec), config_(config) {}

  void prepare(Root& root) const {
    root.remaining = graph_.all() - root.partial->assigned;
    root.districts_left = spec_.districts() - root.partial->districts;
    root.base = config_.relaxed ? relaxed_measure_of(*root.partial, config_.n, graph_.size()) : 0;
    root.table = enumerate_valid_clusters(root.remaining, config_.n, graph_, spec_);
    if (config_.prune_small_components)
      root.table = prune_small_components(root.remaining, config_.n, root.table, graph_);
    root.top.resize(root.table.size());
    for (CandidateId i = 0; i < root.top.size(); ++i) root.top[i] = i;
  }

  /// Evaluates the node; returns false if the subtree is infeasible or pruned.
  bool visit(const Root& root, std::size_t root_index, const CountySet& remaining, std::int64_t districts,
             const std::vector<CandidateId>& candidates, std::int64_t depth, const std::vector<Choice>& chosen,
             std::vector<Record>& out) {
    ++nodes_;
    DistrictInterval range{0, 0};
    bool live = true;
    for (const auto& comp : connected_components(graph_, remaining)) {
      const auto r = district_bounds(graph_.population(comp), spec_);
      if (r.empty()) return false;
      range.lo += r.lo;
      range.hi += r.hi;
      if (comp.size() <= config_.n) live = false;
    }
    if (!range.contains(districts)) return false;

    const std::int64_t score = root.base + depth;
    if (config_.compatibility_bound) {
      CompatibilityBound bound;
      for (CandidateId c : candidates) bound.add(root.table[c].counties);
      const auto extra = static_cast<std::int64_t>(bound.value(config_.n));
      if (score + extra < best_.load(std::memory_order_relaxed) - config_.fuzz) return false;
    }
    if (live || !config_.require_live) {
      offer(score);
      if (score >= best_.load(std::memory_order_relaxed) - config_.fuzz)
        out.push_back({root_index, score, chosen});
    }
    return true;
  }

  void descend(const Root& root, std::size_t root_index, const CountySet& remaining, std::int64_t districts,
               const std::vector<CandidateId>& candidates, std::size_t i, std::int64_t depth,
               std::vector<Choice>& chosen, std::vector<Record>& out) {
    const CandidateCluster& v = root.table[candidates[i]];
    std::vector<CandidateId> next;
    next.reserve(candidates.size() - i);
    for (std::size_t j = i + 1; j < candidates.size(); ++j)
      if (!root.table[candidates[j]].counties.intersects(v.counties)) next.push_back(candidates[j]);
    const CountySet rest = remaining - v.counties;
    const std::int64_t top = std::min(v.interval.hi, districts);
    for (std::int64_t d = v.interval.lo; d <= top; ++d) {
      chosen.push_back({candidates[i], d});
      dfs(root, root_index, rest, districts - d, next, depth + 1, chosen, out);
      chosen.pop_back();
    }
  }

  void dfs(const Root& root, std::size_t root_index, const CountySet& remaining, std::int64_t districts,
           const std::vector<CandidateId>& candidates, std::int64_t depth, std::vector<Choice>& chosen,
           std::vector<Record>& out) {
    if (!visit(root, root_index, remaining, districts, candidates, depth, chosen, out)) return;
    for (std::size_t i = 0; i < candidates.size(); ++i)
      descend(root, root_index, remaining, districts, candidates, i, depth, chosen, out);
  }

  [[nodiscard]] std::int64_t best() const { return best_.load(); }
  [[nodiscard]] std::size_t nodes() const { return nodes_.load(); }

 private:
  void offer(std::int64_t score) {
    std::int64_t cur = best_.load(std::memory_order_relaxed);
    while (score > cur && !best_.compare_exchange_weak(cur, score, std::memory_order_relaxed)) {
    }
  }

  const CountyGraph& graph_;
  const ProblemSpec& spec_;
  const PhaseConfig& config_;
  std::atomic<std::int64_t> best_{kNoScore};
  std::atomic<std::size_t> nodes_{0};
};

}  // namespace

std::int64_t relaxed_measure_of(const Partial& partial, std::size_t n, std::size_t county_count) {
  const auto clusters = static_cast<std::int64_t>(partial.clusters.size());
  const auto unassigned = static_cast<std::int64_t>(county_count - partial.assigned.size());
  return static_cast<std::int64_t>(n + 1) * clusters + unassigned;
}

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

Clustering to_clustering(const Partial& partial) {
  Clustering c{partial.clusters};
  c.normalize();
  return c;
}

void sort_partials(std::vector<Partial>& partials, const CountyGraph& graph) {
  std::vector<std::pair<std::string, std::size_t>> keys;
  keys.reserve(partials.size());
  for (std::size_t i = 0; i < partials.size(); ++i)
    keys.emplace_back(canonical_text(to_clustering(partials[i]), graph), i);
  std::sort(keys.begin(), keys.end());
  std::vector<Partial> out;
  out.reserve(partials.size());
  for (const auto& [key, i] : keys) out.push_back(std::move(partials[i]));
  partials = std::move(out);
}

PhaseResult run_phase(const CountyGraph& graph, const ProblemSpec& spec, const std::vector<Partial>& roots,
                      const PhaseConfig& config) {
  const unsigned threads = resolve_threads(config.threads);
  Search search(graph, spec, config);

  std::vector<Root> prepared(roots.size());
  std::vector<std::vector<Record>> per_worker(threads);

  // Root nodes first: enumeration, feasibility, and the empty choice.
  parallel_for(roots.size(), threads, [&](std::size_t r, unsigned w) {
    Root& root = prepared[r];
    root.partial = &roots[r];
    search.prepare(root);
    const std::vector<Choice> none;
    root.viable = search.visit(root, r, root.remaining, root.districts_left, root.top, 0, none, per_worker[w]);
  });

  // Then one task per (root, first candidate) pair.
  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t r = 0; r < prepared.size(); ++r)
    if (prepared[r].viable)
      for (std::size_t i = 0; i < prepared[r].top.size(); ++i) tasks.emplace_back(r, i);

  parallel_for(tasks.size(), threads, [&](std::size_t t, unsigned w) {
    const auto [r, i] = tasks[t];
    const Root& root = prepared[r];
    std::vector<Choice> chosen;
    search.descend(root, r, root.remaining, root.districts_left, root.top, i, 0, chosen, per_worker[w]);
  });

  PhaseResult result;
  result.best_score = search.best();
  result.nodes = search.nodes();
  const std::int64_t threshold = result.best_score - config.fuzz;
  for (auto& records : per_worker) {
    for (auto& rec : records) {
      if (rec.score < threshold) continue;
      const Root& root = prepared[rec.root];
      Partial p = *root.partial;
      for (const auto& ch : rec.chosen) {
        const auto& cand = root.table[ch.candidate];
        p.clusters.push_back({cand.counties, ch.districts});
        p.assigned |= cand.counties;
        p.districts += ch.districts;
      }
      result.retained.push_back(std::move(p));
    }
    records.clear();
  }
  sort_partials(result.retained, graph);
  return result;
}

}  // namespace cluster_forge::detail
