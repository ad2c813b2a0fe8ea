#include "cluster_forge/clustering.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace cluster_forge {

void Clustering::normalize() {
  std::sort(clusters.begin(), clusters.end(),
            [](const Cluster& a, const Cluster& b) { return a.counties.lowest() < b.counties.lowest(); });
}

std::int64_t Clustering::total_districts() const {
  std::int64_t d = 0;
  for (const auto& c : clusters) d += c.districts;
  return d;
}

CountySet Clustering::counties() const {
  CountySet s;
  for (const auto& c : clusters) s |= c.counties;
  return s;
}

std::vector<CountySet> Clustering::partition() const {
  std::vector<CountySet> out;
  out.reserve(clusters.size());
  for (const auto& c : clusters) out.push_back(c.counties);
  std::sort(out.begin(), out.end(),
            [](const CountySet& a, const CountySet& b) { return a.lowest() < b.lowest(); });
  return out;
}

SizeSignature::SizeSignature(std::vector<std::int64_t> counts) : counts_(std::move(counts)) { trim(); }

SizeSignature SizeSignature::of(const Clustering& clustering) {
  std::vector<std::int64_t> counts;
  for (const auto& c : clustering.clusters) {
    const std::size_t n = c.size();
    if (n == 0) continue;
    if (counts.size() < n) counts.resize(n, 0);
    ++counts[n - 1];
  }
  return SizeSignature(std::move(counts));
}

std::int64_t SizeSignature::count(std::size_t n) const {
  return n >= 1 && n <= counts_.size() ? counts_[n - 1] : 0;
}

std::int64_t SizeSignature::total_clusters() const {
  std::int64_t t = 0;
  for (auto c : counts_) t += c;
  return t;
}

void SizeSignature::trim() {
  while (!counts_.empty() && counts_.back() == 0) counts_.pop_back();
}

bool operator==(const SizeSignature& a, const SizeSignature& b) { return a.counts_ == b.counts_; }

Preference compare_signatures(const SizeSignature& a, const SizeSignature& b) {
  const std::size_t len = std::max(a.counts().size(), b.counts().size());
  for (std::size_t n = 1; n <= len; ++n) {
    if (a.count(n) > b.count(n)) return Preference::kFirst;
    if (a.count(n) < b.count(n)) return Preference::kSecond;
  }
  return Preference::kTie;
}

std::vector<std::string> validate_clustering(const Clustering& clustering, const CountyGraph& graph,
                                             const ProblemSpec& spec) {
  std::vector<std::string> out;
  auto describe = [&](const CountySet& s) {
    std::string txt = "{";
    for (const auto& id : graph.ids_of(s)) txt += (txt.size() > 1 ? "," : "") + id;
    return txt + "}";
  };

  CountySet seen;
  for (const auto& c : clustering.clusters) {
    if (c.counties.empty()) {
      out.push_back("empty cluster");
      continue;
    }
    bool in_graph = true;
    c.counties.for_each([&](CountyIndex i) { in_graph = in_graph && i < graph.size(); });
    if (!in_graph) {
      out.push_back("cluster references a county outside the graph");
      continue;
    }
    if (c.counties.intersects(seen))
      out.push_back("overlap violation: " + describe(c.counties & seen) + " assigned more than once");
    seen |= c.counties;
    if (!is_contiguous(graph, c.counties)) out.push_back("contiguity violation: " + describe(c.counties));
    const Population pop = graph.population(c.counties);
    if (c.districts < 1) {
      out.push_back("district violation: " + describe(c.counties) + " has " + std::to_string(c.districts) +
                    " districts");
    } else if (pop < spec.min_district_population() * c.districts ||
               pop > spec.max_district_population() * c.districts) {
      out.push_back("population violation: " + describe(c.counties) + " has population " +
                    std::to_string(pop) + ", outside [" +
                    std::to_string(spec.min_district_population() * c.districts) + ", " +
                    std::to_string(spec.max_district_population() * c.districts) + "] for " +
                    std::to_string(c.districts) + " districts");
    }
  }
  const CountySet missing = graph.all() - seen;
  missing.for_each([&](CountyIndex i) { out.push_back("cover violation: county " + graph.id(i) + " unassigned"); });
  if (clustering.total_districts() != spec.districts())
    out.push_back("district total violation: " + std::to_string(clustering.total_districts()) +
                  " districts assigned, expected " + std::to_string(spec.districts()));
  return out;
}

std::string canonical_text(const Clustering& clustering, const CountyGraph& graph) {
  Clustering c = clustering;
  c.normalize();
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& cl : c.clusters) {
    nlohmann::ordered_json j;
    j["counties"] = graph.ids_of(cl.counties);
    j["districts"] = cl.districts;
    arr.push_back(std::move(j));
  }
  return arr.dump();
}

void canonicalize(std::vector<Clustering>& clusterings, const CountyGraph& graph) {
  std::vector<std::pair<std::string, Clustering>> keyed;
  keyed.reserve(clusterings.size());
  for (auto& c : clusterings) {
    c.normalize();
    keyed.emplace_back(canonical_text(c, graph), std::move(c));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
              keyed.end());
  clusterings.clear();
  for (auto& [key, c] : keyed) clusterings.push_back(std::move(c));
}

void dedupe_partitions(std::vector<Clustering>& clusterings) {
  auto less = [](const std::vector<CountySet>& a, const std::vector<CountySet>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), lex_less);
  };
  std::set<std::vector<CountySet>, decltype(less)> seen(less);
  std::vector<Clustering> out;
  for (auto& c : clusterings)
    if (seen.insert(c.partition()).second) out.push_back(std::move(c));
  clusterings = std::move(out);
}

}  // namespace cluster_forge
