#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "cluster_forge/relaxed.hpp"

namespace cluster_forge::io {

using Json = nlohmann::ordered_json;

/// Six decimal places.
std::string fixed6(double value);

Json spec_json(const ProblemSpec& spec, const CountyGraph& graph);
Json cluster_json(const Cluster& cluster, const CountyGraph& graph);
Json clustering_json(const Clustering& clustering, const CountyGraph& graph);

/// Strict sets: {"spec", "signature", "solutions": [[cluster...]...]}.
/// Relaxed sets add mode, fuzz and the cluster-count summary, and each
/// solution becomes {"clusters", "cluster_count", "signature"}.
Json solution_set_json(const SolutionSet& set, const CountyGraph& graph);
Json compressed_json(const CompressedSolutionSet& set, const CountyGraph& graph);

/// Two-space indented text with a trailing newline.
std::string dump(const Json& json);

/// Reads the solutions of any solution-set document (strict or relaxed) or
/// a bare clustering array. Throws InputError on malformed input or ids
/// unknown to `graph`.
std::vector<Clustering> read_clusterings(const Json& json, const CountyGraph& graph);

CompressedSolutionSet read_compressed(const Json& json, const CountyGraph& graph);

/// Sorted ids appearing in the document's first solution.
std::vector<std::string> universe_of(const Json& json);

Json parse_json_file(const std::string& path);
std::string read_file(const std::string& path);

/// Writes through a temporary file in the same directory and renames it
/// into place.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace cluster_forge::io
