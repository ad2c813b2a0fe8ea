#include "cluster_forge/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <set>

#include "cluster_forge/errors.hpp"
#include "csv.hpp"

namespace cluster_forge {

bool lex_less(const CountySet& a, const CountySet& b) {
  CountySet x = a;
  CountySet y = b;
  while (!x.empty() && !y.empty()) {
    const CountyIndex i = x.pop_lowest();
    const CountyIndex j = y.pop_lowest();
    if (i != j) return i < j;
  }
  return x.empty() && !y.empty();
}

CountyGraph::CountyGraph(std::vector<County> counties, const std::vector<Edge>& edges)
    : counties_(std::move(counties)) {
  if (counties_.size() > CountySet::kCapacity)
    throw InputError("graph has " + std::to_string(counties_.size()) + " counties; at most " +
                     std::to_string(CountySet::kCapacity) + " are supported");
  std::sort(counties_.begin(), counties_.end(),
            [](const County& a, const County& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < counties_.size(); ++i) {
    if (counties_[i].population < 0)
      throw InputError("county " + counties_[i].id + " has negative population");
    if (i > 0 && counties_[i].id == counties_[i - 1].id)
      throw InputError("duplicate county id " + counties_[i].id);
    total_population_ += counties_[i].population;
  }
  neighbors_.assign(counties_.size(), CountySet{});
  for (const auto& [a, b] : edges) {
    const auto ia = index_of(a);
    const auto ib = index_of(b);
    if (!ia) throw InputError("edge references unknown county id " + a);
    if (!ib) throw InputError("edge references unknown county id " + b);
    if (*ia == *ib) throw InputError("self-loop on county " + a);
    if (!neighbors_[*ia].contains(*ib)) ++edge_count_;
    neighbors_[*ia].insert(*ib);
    neighbors_[*ib].insert(*ia);
  }
}

Population CountyGraph::population(const CountySet& s) const {
  Population total = 0;
  s.for_each([&](CountyIndex i) { total += counties_[i].population; });
  return total;
}

std::optional<CountyIndex> CountyGraph::index_of(std::string_view id) const {
  const auto it = std::lower_bound(counties_.begin(), counties_.end(), id,
                                   [](const County& c, std::string_view v) { return c.id < v; });
  if (it == counties_.end() || it->id != id) return std::nullopt;
  return static_cast<CountyIndex>(it - counties_.begin());
}

CountySet CountyGraph::set_of(const std::vector<std::string>& ids) const {
  CountySet s;
  for (const auto& id : ids) {
    const auto i = index_of(id);
    if (!i) throw InputError("unknown county id " + id);
    s.insert(*i);
  }
  return s;
}

std::vector<std::string> CountyGraph::ids_of(const CountySet& s) const {
  std::vector<std::string> out;
  s.for_each([&](CountyIndex i) { out.push_back(counties_[i].id); });
  return out;
}

std::vector<Edge> CountyGraph::edges() const {
  std::vector<Edge> out;
  for (CountyIndex i = 0; i < size(); ++i)
    neighbors_[i].above(i).for_each([&](CountyIndex j) { out.emplace_back(id(i), id(j)); });
  return out;
}

CountyGraph CountyGraph::with_populations(const PopulationSeries& series) const {
  series.check_matches(*this);
  std::vector<County> counties = counties_;
  for (auto& c : counties) c.population = series.populations().at(c.id);
  return CountyGraph(std::move(counties), edges());
}

PopulationSeries::PopulationSeries(std::string label, std::map<std::string, Population> populations)
    : label_(std::move(label)), populations_(std::move(populations)) {
  for (const auto& [id, pop] : populations_)
    if (pop < 0) throw InputError("series " + label_ + ": negative population for " + id);
}

void PopulationSeries::check_matches(const CountyGraph& graph) const {
  if (populations_.size() != graph.size())
    throw InputError("series " + label_ + " has " + std::to_string(populations_.size()) +
                     " counties, graph has " + std::to_string(graph.size()));
  for (const auto& [id, pop] : populations_)
    if (!graph.index_of(id)) throw InputError("series " + label_ + ": unknown county id " + id);
}

// ---------------------------------------------------------------------------

CountySet component_of(const CountyGraph& graph, const CountySet& subset, CountyIndex start) {
  CountySet seen = CountySet::of({start});
  CountySet frontier = seen;
  while (!frontier.empty()) {
    CountySet next;
    frontier.for_each([&](CountyIndex i) { next |= graph.neighbors(i); });
    next &= subset;
    next -= seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

std::vector<CountySet> connected_components(const CountyGraph& graph, const CountySet& subset) {
  std::vector<CountySet> out;
  CountySet rest = subset;
  while (!rest.empty()) {
    CountySet comp = component_of(graph, rest, rest.lowest());
    rest -= comp;
    out.push_back(comp);
  }
  return out;
}

bool is_contiguous(const CountyGraph& graph, const CountySet& subset) {
  if (subset.empty()) return false;
  return component_of(graph, subset, subset.lowest()) == subset;
}

// ---------------------------------------------------------------------------

namespace {

Population parse_population(const detail::CsvReader& reader, std::size_t line, const std::string& text) {
  if (text.empty()) throw reader.error(line, "missing population");
  if (text[0] == '-') throw reader.error(line, "negative population '" + text + "'");
  Population value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value, 10);
  if (ec != std::errc{} || ptr != end) throw reader.error(line, "malformed population '" + text + "'");
  return value;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return in;
}

}  // namespace

std::vector<County> parse_counties(std::istream& in) {
  detail::CsvReader reader(in, "counties");
  reader.expect_header({"id", "name", "population"});
  std::vector<County> out;
  std::set<std::string> seen;
  detail::CsvRow row;
  while (reader.next(row)) {
    County c{row.fields[0], row.fields[1], 0};
    if (c.id.empty()) throw reader.error(row.line, "missing id");
    c.population = parse_population(reader, row.line, row.fields[2]);
    if (!seen.insert(c.id).second) throw reader.error(row.line, "duplicate id " + c.id);
    out.push_back(std::move(c));
  }
  return out;
}

CountyGraph parse_adjacency(std::istream& in, std::vector<County> counties,
                            const AdjacencyOptions& options, std::vector<std::string>* warnings) {
  detail::CsvReader reader(in, "adjacency");
  reader.expect_header({"id_a", "id_b"});
  std::set<std::string> ids;
  for (const auto& c : counties) ids.insert(c.id);
  std::set<Edge> seen;
  std::vector<Edge> edges;
  detail::CsvRow row;
  while (reader.next(row)) {
    const auto& a = row.fields[0];
    const auto& b = row.fields[1];
    if (!ids.contains(a)) throw reader.error(row.line, "unknown id " + a);
    if (!ids.contains(b)) throw reader.error(row.line, "unknown id " + b);
    if (a == b) throw reader.error(row.line, "self-loop on " + a);
    Edge key = a < b ? Edge{a, b} : Edge{b, a};
    if (!seen.insert(key).second) {
      const std::string msg = "duplicate edge " + key.first + "-" + key.second;
      if (options.strict) throw reader.error(row.line, msg);
      if (warnings) warnings->push_back("adjacency line " + std::to_string(row.line) + ": " + msg);
      continue;
    }
    edges.push_back(std::move(key));
  }
  return CountyGraph(std::move(counties), edges);
}

PopulationSeries parse_population_series(std::istream& in, std::string label) {
  detail::CsvReader reader(in, "series " + label);
  reader.expect_header({"id", "population"});
  std::map<std::string, Population> pops;
  detail::CsvRow row;
  while (reader.next(row)) {
    if (row.fields[0].empty()) throw reader.error(row.line, "missing id");
    const Population p = parse_population(reader, row.line, row.fields[1]);
    if (!pops.emplace(row.fields[0], p).second)
      throw reader.error(row.line, "duplicate id " + row.fields[0]);
  }
  return PopulationSeries(std::move(label), std::move(pops));
}

namespace {
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos && s == detail::CsvReader::trim(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}
}  // namespace

void write_counties(std::ostream& out, const CountyGraph& graph) {
  out << "id,name,population\n";
  for (const auto& c : graph.counties())
    out << csv_field(c.id) << ',' << csv_field(c.name) << ',' << c.population << '\n';
}

void write_adjacency(std::ostream& out, const CountyGraph& graph) {
  out << "id_a,id_b\n";
  for (const auto& [a, b] : graph.edges()) out << csv_field(a) << ',' << csv_field(b) << '\n';
}

void write_population_series(std::ostream& out, const PopulationSeries& series) {
  out << "id,population\n";
  for (const auto& [id, pop] : series.populations()) out << csv_field(id) << ',' << pop << '\n';
}

CountyGraph load_graph(const std::string& counties_path, const std::string& adjacency_path,
                       const AdjacencyOptions& options, std::vector<std::string>* warnings) {
  auto cin = open_input(counties_path);
  auto counties = parse_counties(cin);
  auto ain = open_input(adjacency_path);
  return parse_adjacency(ain, std::move(counties), options, warnings);
}

PopulationSeries load_population_series(const std::string& path, std::string label) {
  auto in = open_input(path);
  return parse_population_series(in, std::move(label));
}

}  // namespace cluster_forge
