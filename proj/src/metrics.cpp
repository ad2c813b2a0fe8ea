#include "cluster_forge/metrics.hpp"

#include <cmath>
#include <map>

#include "cluster_forge/errors.hpp"

namespace cluster_forge {

namespace {

void require_same_universe(const Clustering& a, const Clustering& b) {
  if (!(a.counties() == b.counties())) throw InputError("clusterings cover different county sets");
}

bool same_cluster(const Cluster& x, const Cluster& y, bool ignore_districts) {
  return x.counties == y.counties && (ignore_districts || x.districts == y.districts);
}

}  // namespace

double different_clusters(const Clustering& a, const Clustering& b, bool ignore_districts) {
  require_same_universe(a, b);
  if (a.size() + b.size() == 0) return 0.0;
  std::size_t shared = 0;
  for (const auto& x : a.clusters)
    for (const auto& y : b.clusters)
      if (same_cluster(x, y, ignore_districts)) {
        ++shared;
        break;
      }
  const double mean = 0.5 * static_cast<double>(a.size() + b.size());
  return 100.0 * (1.0 - static_cast<double>(shared) / mean);
}

double variation_of_information(const Clustering& a, const Clustering& b) {
  require_same_universe(a, b);
  const double n = static_cast<double>(a.counties().size());
  if (n == 0) throw InputError("variation of information needs at least one county");
  double vi = 0;
  for (const auto& x : a.clusters) {
    for (const auto& y : b.clusters) {
      const double nij = static_cast<double>((x.counties & y.counties).size());
      if (nij == 0) continue;
      const double ai = static_cast<double>(x.size());
      const double bj = static_cast<double>(y.size());
      vi -= nij / n * std::log2(nij * nij / (ai * bj));
    }
  }
  return vi < 0 ? 0.0 : vi;
}

double average_population_change(const PopulationSeries& x, const PopulationSeries& y) {
  if (x.size() != y.size()) throw InputError("population series cover different counties");
  if (x.size() == 0) throw InputError("population series are empty");
  double sum = 0;
  for (const auto& [id, xi] : x.populations()) {
    const auto it = y.populations().find(id);
    if (it == y.populations().end()) throw InputError("county " + id + " missing from series " + y.label());
    const Population yi = it->second;
    if (xi + yi == 0) throw InputError("county " + id + " has zero population in both series");
    sum += std::abs(static_cast<double>(xi - yi)) / (0.5 * static_cast<double>(xi + yi));
  }
  return 100.0 * sum / static_cast<double>(x.size());
}

std::vector<StabilityRecord> stability_chain(const std::vector<SolutionSet>& sets,
                                             const std::vector<PopulationSeries>& series, const Clustering& initial,
                                             bool ignore_districts) {
  if (sets.size() != series.size()) throw InputError("need one solution set per population series");
  std::vector<StabilityRecord> out;
  Clustering current = initial;
  for (std::size_t k = 1; k < sets.size(); ++k) {
    const auto& options = sets[k].clusterings;
    if (options.empty()) throw InputError("solution set for " + series[k].label() + " is empty");
    std::size_t best = 0;
    double best_dc = 0, best_vi = 0;
    for (std::size_t i = 0; i < options.size(); ++i) {
      const double dc = different_clusters(current, options[i], ignore_districts);
      const double vi = variation_of_information(current, options[i]);
      if (i == 0 || dc < best_dc || (dc == best_dc && vi < best_vi)) {
        best = i;
        best_dc = dc;
        best_vi = vi;
      }
    }
    StabilityRecord r;
    r.from_label = series[k - 1].label();
    r.to_label = series[k].label();
    r.dc = best_dc;
    r.vi = best_vi;
    r.apc = average_population_change(series[k - 1], series[k]);
    if (r.apc > 0) r.vi_over_apc = r.vi / r.apc;
    r.chosen_index = best;
    r.chosen = options[best];
    current = r.chosen;
    out.push_back(std::move(r));
  }
  return out;
}

DeviationReport population_deviation(const Clustering& clustering, const CountyGraph& graph, const ProblemSpec& spec) {
  DeviationReport report;
  const auto state = static_cast<long double>(spec.state_population());
  const auto total = static_cast<long double>(spec.districts());
  for (const auto& c : clustering.clusters) {
    DeviationReport::Entry e;
    e.cluster = c;
    e.population = graph.population(c.counties);
    const long double ideal = state * static_cast<long double>(c.districts);
    e.percent = static_cast<double>(100.0L * (static_cast<long double>(e.population) * total - ideal) / ideal);
    report.mean_absolute += std::abs(e.percent);
    report.mean_signed += e.percent;
    report.entries.push_back(std::move(e));
  }
  if (!report.entries.empty()) {
    report.mean_absolute /= static_cast<double>(report.entries.size());
    report.mean_signed /= static_cast<double>(report.entries.size());
  }
  return report;
}

std::int64_t split_lower_bound(const Clustering& clustering) {
  std::int64_t s = 0;
  for (const auto& c : clustering.clusters) s += c.districts - 1;
  return s;
}

std::int64_t traversal_lower_bound(const Clustering& clustering) {
  std::int64_t s = 0;
  for (const auto& c : clustering.clusters) s += static_cast<std::int64_t>(c.size()) - 1;
  return s;
}

}  // namespace cluster_forge
