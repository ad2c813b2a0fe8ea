#include "cluster_forge/feasibility.hpp"

#include <charconv>

#include "cluster_forge/errors.hpp"

namespace cluster_forge {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 10);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw InputError("malformed tolerance '" + std::string(whole) + "', expected NUM/DEN");
  return v;
}

}  // namespace

Tolerance Tolerance::parse(std::string_view text) {
  const auto slash = text.find('/');
  Tolerance t;
  if (slash == std::string_view::npos) {
    t.num = parse_int(text, text);
    t.den = 1;
  } else {
    t.num = parse_int(text.substr(0, slash), text);
    t.den = parse_int(text.substr(slash + 1), text);
  }
  if (t.num < 0) throw InputError("tolerance numerator must be >= 0");
  if (t.den <= 0) throw InputError("tolerance denominator must be > 0");
  return t;
}

std::string Tolerance::str() const { return std::to_string(num) + "/" + std::to_string(den); }

ProblemSpec::ProblemSpec(std::int64_t districts, Tolerance tolerance, Population state_population)
    : districts_(districts), tolerance_(tolerance), state_population_(state_population) {
  if (districts_ < 1) throw InputError("number of districts must be >= 1");
  if (tolerance_.num < 0 || tolerance_.den <= 0) throw InputError("invalid tolerance " + tolerance_.str());
  if (tolerance_.num >= tolerance_.den) throw InputError("tolerance " + tolerance_.str() + " must be < 1");
  if (state_population_ < 0) throw InputError("state population must be >= 0");

  using Wide = __int128;
  const Wide pop = state_population_;
  const Wide denom = Wide{tolerance_.den} * districts_;
  const Wide lo_num = Wide{tolerance_.den - tolerance_.num} * pop;
  const Wide hi_num = Wide{tolerance_.den + tolerance_.num} * pop;
  min_district_ = static_cast<Population>(lo_num / denom + (lo_num % denom != 0 ? 1 : 0));
  max_district_ = static_cast<Population>(hi_num / denom);

  if (min_district_ > max_district_)
    throw InfeasibleError("minimum district population " + std::to_string(min_district_) +
                          " exceeds maximum " + std::to_string(max_district_));
  if (min_district_ < 1)
    throw InputError("minimum district population is " + std::to_string(min_district_) +
                     "; state population too small for " + std::to_string(districts_) + " districts");
}

ProblemSpec ProblemSpec::for_graph(const CountyGraph& graph, std::int64_t districts, Tolerance tolerance) {
  return ProblemSpec(districts, tolerance, graph.total_population());
}

DistrictInterval district_bounds(Population population, const ProblemSpec& spec) {
  if (population <= 0) return {};
  return {ceil_div(population, spec.max_district_population()),
          floor_div(population, spec.min_district_population())};
}

bool is_valid_cluster(const CountySet& counties, std::int64_t d, const CountyGraph& graph,
                      const ProblemSpec& spec) {
  if (d < 1 || !is_contiguous(graph, counties)) return false;
  return district_bounds(graph.population(counties), spec).contains(d);
}

DistrictInterval clusterable_range(const CountySet& subset, const CountyGraph& graph,
                                   const ProblemSpec& spec) {
  DistrictInterval total{0, 0};
  for (const auto& comp : connected_components(graph, subset)) {
    const auto r = district_bounds(graph.population(comp), spec);
    if (r.empty()) return {};
    total.lo += r.lo;
    total.hi += r.hi;
  }
  return total;
}

bool can_cluster(const CountySet& subset, std::int64_t d, const CountyGraph& graph,
                 const ProblemSpec& spec) {
  return clusterable_range(subset, graph, spec).contains(d);
}

}  // namespace cluster_forge
