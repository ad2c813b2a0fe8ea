#include "cluster_forge/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "cluster_forge/errors.hpp"

namespace cluster_forge::io {

namespace {

Json signature_json(const SizeSignature& s) {
  Json arr = Json::array();
  for (auto c : s.counts()) arr.push_back(c);
  return arr;
}

Cluster read_cluster(const Json& j, const CountyGraph& graph) {
  if (!j.is_object() || !j.contains("counties") || !j.contains("districts"))
    throw InputError("cluster must be an object with counties and districts");
  const auto ids = j.at("counties").get<std::vector<std::string>>();
  return {graph.set_of(ids), j.at("districts").get<std::int64_t>()};
}

Clustering read_clustering(const Json& j, const CountyGraph& graph) {
  const Json& arr = j.is_object() && j.contains("clusters") ? j.at("clusters") : j;
  if (!arr.is_array()) throw InputError("clustering must be an array of clusters");
  Clustering c;
  for (const auto& x : arr) c.clusters.push_back(read_cluster(x, graph));
  c.normalize();
  return c;
}

const Json& solutions_of(const Json& json) {
  if (json.is_object()) {
    if (!json.contains("solutions") || !json.at("solutions").is_array())
      throw InputError("document has no solutions array");
    return json.at("solutions");
  }
  return json;
}

bool bare_clustering(const Json& json) {
  return json.is_array() && (json.empty() || (json.front().is_object() && json.front().contains("counties")));
}

}  // namespace

std::string fixed6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

Json spec_json(const ProblemSpec& spec, const CountyGraph& graph) {
  Json j;
  j["districts"] = spec.districts();
  j["epsilon"] = spec.tolerance().str();
  j["counties"] = graph.size();
  j["state_population"] = spec.state_population();
  j["min_district_population"] = spec.min_district_population();
  j["max_district_population"] = spec.max_district_population();
  return j;
}

Json cluster_json(const Cluster& cluster, const CountyGraph& graph) {
  Json j;
  j["counties"] = graph.ids_of(cluster.counties);
  j["districts"] = cluster.districts;
  return j;
}

Json clustering_json(const Clustering& clustering, const CountyGraph& graph) {
  Clustering c = clustering;
  c.normalize();
  Json arr = Json::array();
  for (const auto& x : c.clusters) arr.push_back(cluster_json(x, graph));
  return arr;
}

Json solution_set_json(const SolutionSet& set, const CountyGraph& graph) {
  Json j;
  j["spec"] = spec_json(set.spec, graph);
  if (set.relaxed) {
    const auto summary = summarize_cluster_counts(set);
    j["mode"] = "relaxed";
    j["fuzz"] = set.fuzz;
    j["max_clusters"] = summary.max_clusters;
    j["max_cluster_solutions"] = summary.at_max;
  }
  j["signature"] = signature_json(set.signature);
  Json sols = Json::array();
  for (const auto& c : set.clusterings) {
    if (set.relaxed) {
      Json s;
      s["clusters"] = clustering_json(c, graph);
      s["cluster_count"] = c.size();
      s["signature"] = signature_json(SizeSignature::of(c));
      sols.push_back(std::move(s));
    } else {
      sols.push_back(clustering_json(c, graph));
    }
  }
  j["solutions"] = std::move(sols);
  return j;
}

Json compressed_json(const CompressedSolutionSet& set, const CountyGraph& graph) {
  Json j;
  j["spec"] = spec_json(set.spec, graph);
  j["mode"] = set.relaxed ? "relaxed" : "strict";
  if (set.relaxed) j["fuzz"] = set.fuzz;
  j["expanded_size"] = set.expanded_size();
  j["backbone"] = clustering_json(Clustering{set.backbone}, graph);
  Json regions = Json::array();
  for (const auto& r : set.regions) {
    Json rj;
    rj["counties"] = graph.ids_of(r.counties);
    Json alts = Json::array();
    for (const auto& a : r.alternatives) alts.push_back(clustering_json(Clustering{a}, graph));
    rj["alternatives"] = std::move(alts);
    regions.push_back(std::move(rj));
  }
  j["regions"] = std::move(regions);
  return j;
}

std::string dump(const Json& json) { return json.dump(2) + "\n"; }

std::vector<Clustering> read_clusterings(const Json& json, const CountyGraph& graph) {
  try {
    std::vector<Clustering> out;
    if (bare_clustering(json)) {
      out.push_back(read_clustering(json, graph));
      return out;
    }
    for (const auto& s : solutions_of(json)) out.push_back(read_clustering(s, graph));
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed solution document: ") + e.what());
  }
}

CompressedSolutionSet read_compressed(const Json& json, const CountyGraph& graph) {
  try {
    const auto& spec = json.at("spec");
    CompressedSolutionSet out(ProblemSpec(spec.at("districts").get<std::int64_t>(),
                                          Tolerance::parse(spec.at("epsilon").get<std::string>()),
                                          graph.total_population()));
    out.relaxed = json.value("mode", "strict") == "relaxed";
    out.fuzz = json.value("fuzz", std::int64_t{0});
    out.backbone = read_clustering(json.at("backbone"), graph).clusters;
    for (const auto& r : json.at("regions")) {
      CompressedSolutionSet::Region region;
      region.counties = graph.set_of(r.at("counties").get<std::vector<std::string>>());
      for (const auto& a : r.at("alternatives")) region.alternatives.push_back(read_clustering(a, graph).clusters);
      out.regions.push_back(std::move(region));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed compressed document: ") + e.what());
  }
}

std::vector<std::string> universe_of(const Json& json) {
  try {
    const Json* first = &json;
    if (!bare_clustering(json)) {
      const auto& sols = solutions_of(json);
      if (sols.empty()) throw InputError("document has no solutions");
      first = &sols.front();
    }
    const Json& arr = first->is_object() && first->contains("clusters") ? first->at("clusters") : *first;
    std::vector<std::string> ids;
    for (const auto& c : arr)
      for (const auto& id : c.at("counties")) ids.push_back(id.get<std::string>());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed solution document: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json_file(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw InputError("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InputError("cannot move output into place at " + path);
  }
}

}  // namespace cluster_forge::io
