#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "cluster_forge/graph.hpp"

namespace cluster_forge {

/// Population tolerance as an exact rational NUM/DEN.
struct Tolerance {
  std::int64_t num = 1;
  std::int64_t den = 20;

  /// Parses "NUM/DEN" (or a bare integer NUM). Throws InputError.
  static Tolerance parse(std::string_view text);
  [[nodiscard]] std::string str() const;

  friend bool operator==(const Tolerance&, const Tolerance&) = default;
};

/// Integer district-count range [lo, hi]; empty when lo > hi.
struct DistrictInterval {
  std::int64_t lo = 1;
  std::int64_t hi = 0;

  [[nodiscard]] bool empty() const { return lo > hi; }
  [[nodiscard]] bool contains(std::int64_t d) const { return lo <= d && d <= hi; }

  friend bool operator==(const DistrictInterval&, const DistrictInterval&) = default;
};

/// Total district count, tolerance, and the derived per-district bounds
///
///   min = ceil((1 - eps) * pop(G) / D),   max = floor((1 + eps) * pop(G) / D)
///
/// computed with exact integer arithmetic.
class ProblemSpec {
 public:
  /// Throws InputError for D < 1, a tolerance outside [0, 1), or a minimum
  /// district population below 1; throws InfeasibleError when min > max.
  ProblemSpec(std::int64_t districts, Tolerance tolerance, Population state_population);

  static ProblemSpec for_graph(const CountyGraph& graph, std::int64_t districts,
                               Tolerance tolerance = {});

  [[nodiscard]] std::int64_t districts() const { return districts_; }
  [[nodiscard]] const Tolerance& tolerance() const { return tolerance_; }
  [[nodiscard]] Population state_population() const { return state_population_; }
  [[nodiscard]] Population min_district_population() const { return min_district_; }
  [[nodiscard]] Population max_district_population() const { return max_district_; }

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;

 private:
  std::int64_t districts_;
  Tolerance tolerance_;
  Population state_population_;
  Population min_district_;
  Population max_district_;
};

/// ceil(a / b) and floor(a / b) for a >= 0, b > 0.
constexpr std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return a / b + (a % b != 0 ? 1 : 0); }
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) { return a / b; }

/// All d with min*d <= population <= max*d. Empty for population 0.
DistrictInterval district_bounds(Population population, const ProblemSpec& spec);

/// Contiguous and population-valid for exactly d districts.
bool is_valid_cluster(const CountySet& counties, std::int64_t d, const CountyGraph& graph,
                      const ProblemSpec& spec);

/// Sum of the per-component district intervals of `subset`, or an empty
/// interval if some component has none. The empty set yields [0, 0].
DistrictInterval clusterable_range(const CountySet& subset, const CountyGraph& graph,
                                   const ProblemSpec& spec);

/// Whether `subset` admits a valid clustering into exactly d districts:
/// every component must have a nonempty district interval and d must lie
/// between the summed minima and maxima.
bool can_cluster(const CountySet& subset, std::int64_t d, const CountyGraph& graph,
                 const ProblemSpec& spec);

}  // namespace cluster_forge
