#include "cluster_forge/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "cluster_forge/errors.hpp"
#include "cluster_forge/io.hpp"
#include "cluster_forge/metrics.hpp"
#include "cluster_forge/oracle.hpp"

namespace cluster_forge::cli {

namespace {

namespace fs = std::filesystem;

constexpr const char* kCountiesHelp = "counties CSV with header id,name,population";
constexpr const char* kAdjacencyHelp = "adjacency CSV with header id_a,id_b, one row per undirected edge";

struct InstanceArgs {
  std::int64_t districts = 0;
  std::string epsilon = "1/20";
  std::string counties;
  std::string adjacency;
  bool strict_parse = false;
  bool quiet = false;
};

struct SolveArgs {
  InstanceArgs instance;
  std::string out;
  std::string compressed_out;
  bool dedupe = false;
  bool no_optimizations = false;
  unsigned threads = 0;
  std::int64_t fuzz = -1;
};

void add_instance(CLI::App* cmd, InstanceArgs& a, bool need_adjacency = true) {
  cmd->add_option("--districts,-D", a.districts, "total number of districts D")->required();
  cmd->add_option("--epsilon", a.epsilon, "population tolerance NUM/DEN")->capture_default_str();
  cmd->add_option("--counties", a.counties, kCountiesHelp)->required();
  auto* adj = cmd->add_option("--adjacency", a.adjacency, kAdjacencyHelp);
  if (need_adjacency) adj->required();
  cmd->add_flag("--strict-parse", a.strict_parse, "reject duplicate adjacency rows instead of warning");
  cmd->add_flag("--quiet,-q", a.quiet, "suppress progress on standard error");
}

void add_solver(CLI::App* cmd, SolveArgs& a) {
  add_instance(cmd, a.instance);
  cmd->add_option("--out,-o", a.out, "write the solution JSON here instead of standard output");
  cmd->add_option("--compressed-out", a.compressed_out, "also write the region-compressed solution JSON");
  cmd->add_flag("--dedupe-partitions", a.dedupe, "treat clusterings with equal county partitions as one");
  cmd->add_flag("--no-optimizations", a.no_optimizations, "disable both search-tree prunings");
  cmd->add_option("--threads,-j", a.threads, "worker threads, 0 = all available")->capture_default_str();
}

CountyGraph load(const InstanceArgs& a, std::ostream& err) {
  std::vector<std::string> warnings;
  CountyGraph graph;
  if (a.adjacency.empty()) {
    std::ifstream in(a.counties);
    if (!in) throw InputError("cannot open " + a.counties);
    graph = CountyGraph(parse_counties(in), {});
  } else {
    graph = load_graph(a.counties, a.adjacency, AdjacencyOptions{a.strict_parse}, &warnings);
  }
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  return graph;
}

SolverOptions solver_options(const SolveArgs& a, std::ostream& err) {
  SolverOptions o;
  o.threads = a.threads;
  o.dedupe_partitions = a.dedupe;
  o.prune_small_components = o.compatibility_bound = !a.no_optimizations;
  if (!a.instance.quiet) o.log = [&err](const std::string& line) { err << line << "\n"; };
  return o;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    io::atomic_write(path, text);
}

void write_results(const SolveArgs& a, const SolutionSet& set, const CountyGraph& graph, std::ostream& out,
                   std::ostream& err) {
  emit(a.out, io::dump(io::solution_set_json(set, graph)), out);
  if (!a.compressed_out.empty()) {
    const auto compressed = compress_solutions(set, graph);
    io::atomic_write(a.compressed_out, io::dump(io::compressed_json(compressed, graph)));
  }
  if (!a.instance.quiet) err << set.size() << " clusterings, signature size " << set.signature.total_clusters() << "\n";
}

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const auto graph = load(a.instance, err);
  const auto spec = ProblemSpec::for_graph(graph, a.instance.districts, Tolerance::parse(a.instance.epsilon));
  const auto set = optimal_clusterings(graph, spec, solver_options(a, err));
  write_results(a, set, graph, out, err);
  return kOk;
}

int cmd_relax(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const auto graph = load(a.instance, err);
  const auto spec = ProblemSpec::for_graph(graph, a.instance.districts, Tolerance::parse(a.instance.epsilon));
  const std::int64_t fuzz = a.fuzz >= 0 ? a.fuzz : (spec.districts() <= 50 ? 3 : 2);
  const auto set = relaxed_search(graph, spec, fuzz, solver_options(a, err));
  write_results(a, set, graph, out, err);
  return kOk;
}

// Graph over the ids of both documents, used when no county file is given.
CountyGraph id_universe(const std::vector<std::string>& ids) {
  std::vector<County> counties;
  for (const auto& id : ids) counties.push_back({id, id, 0});
  return CountyGraph(counties, {});
}

struct CompareArgs {
  std::string a, b, out;
  bool ignore_districts = false;
};

int cmd_compare(const CompareArgs& a, std::ostream& out) {
  const auto ja = io::parse_json_file(a.a);
  const auto jb = io::parse_json_file(a.b);
  const auto ua = io::universe_of(ja);
  if (ua != io::universe_of(jb)) throw InputError("the two documents cover different county sets");
  const auto graph = id_universe(ua);
  const auto ca = io::read_clusterings(ja, graph);
  const auto cb = io::read_clusterings(jb, graph);
  std::ostringstream csv;
  csv << "a_index,b_index,dc_percent,vi_bits_per_county\n";
  for (std::size_t i = 0; i < ca.size(); ++i)
    for (std::size_t j = 0; j < cb.size(); ++j)
      csv << i << "," << j << "," << io::fixed6(different_clusters(ca[i], cb[j], a.ignore_districts)) << ","
          << io::fixed6(variation_of_information(ca[i], cb[j])) << "\n";
  emit(a.out, csv.str(), out);
  return kOk;
}

struct ApcArgs {
  std::string x, y;
};

int cmd_apc(const ApcArgs& a, std::ostream& out) {
  const auto x = load_population_series(a.x, fs::path(a.x).stem().string());
  const auto y = load_population_series(a.y, fs::path(a.y).stem().string());
  out << io::fixed6(average_population_change(x, y)) << "\n";
  return kOk;
}

struct StabilityArgs {
  SolveArgs solve;
  std::string series_dir;
  std::string initial;
  std::size_t initial_index = 0;
  bool ignore_districts = false;
};

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

fs::path cache_dir() {
  if (const char* env = std::getenv("CLUSTER_FORGE_CACHE"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "cluster_forge";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "cluster_forge";
  return fs::temp_directory_path() / "cluster_forge";
}

SolutionSet solve_cached(const CountyGraph& graph, const ProblemSpec& spec, const SolveArgs& a, std::ostream& err) {
  std::ostringstream key;
  key << "cluster_forge strict v1\n" << spec.districts() << " " << spec.tolerance().str() << " " << a.dedupe << "\n";
  write_counties(key, graph);
  write_adjacency(key, graph);
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.json", static_cast<unsigned long long>(fnv1a(key.str())));
  const fs::path dir = cache_dir();
  const fs::path file = dir / name;

  std::error_code ec;
  if (fs::exists(file, ec)) {
    try {
      SolutionSet set(spec);
      set.clusterings = io::read_clusterings(io::parse_json_file(file.string()), graph);
      if (!set.clusterings.empty()) {
        set.signature = SizeSignature::of(set.clusterings.front());
        if (!a.instance.quiet) err << "cache hit " << file.string() << "\n";
        return set;
      }
    } catch (const InputError&) {
      // Unreadable cache entry; solve again and overwrite it.
    }
  }
  auto set = optimal_clusterings(graph, spec, solver_options(a, err));
  fs::create_directories(dir, ec);
  if (!ec) {
    try {
      io::atomic_write(file.string(), io::dump(io::solution_set_json(set, graph)));
    } catch (const InputError& e) {
      if (!a.instance.quiet) err << "warning: " << e.what() << "\n";
    }
  }
  return set;
}

int cmd_stability(const StabilityArgs& a, std::ostream& out, std::ostream& err) {
  const auto base = load(a.solve.instance, err);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(a.series_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.size() < 2) throw InputError("series directory needs at least two population CSV files");

  std::vector<PopulationSeries> series;
  std::vector<SolutionSet> sets;
  for (const auto& f : files) {
    series.push_back(load_population_series(f.string(), f.stem().string()));
    series.back().check_matches(base);
    const auto graph = base.with_populations(series.back());
    const auto spec = ProblemSpec::for_graph(graph, a.solve.instance.districts, Tolerance::parse(a.solve.instance.epsilon));
    if (!a.solve.instance.quiet) err << "solving " << series.back().label() << "\n";
    sets.push_back(solve_cached(graph, spec, a.solve, err));
  }

  Clustering initial = sets.front().clusterings.front();
  if (!a.initial.empty()) {
    const auto all = io::read_clusterings(io::parse_json_file(a.initial), base);
    if (a.initial_index >= all.size()) throw InputError("--initial-index out of range");
    initial = all[a.initial_index];
  }
  const auto chain = stability_chain(sets, series, initial, a.ignore_districts);

  std::ostringstream csv;
  csv << "from,to,dc_percent,vi_bits_per_county,apc_percent_per_county,vi_over_apc,chosen_index,options\n";
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const auto& r = chain[k];
    csv << r.from_label << "," << r.to_label << "," << io::fixed6(r.dc) << "," << io::fixed6(r.vi) << ","
        << io::fixed6(r.apc) << "," << (r.vi_over_apc ? io::fixed6(*r.vi_over_apc) : "null") << ","
        << r.chosen_index << "," << sets[k + 1].size() << "\n";
  }
  emit(a.solve.out, csv.str(), out);
  return kOk;
}

struct DeviationArgs {
  std::string solutions;
  InstanceArgs instance;
  std::string out;
};

int cmd_deviation(const DeviationArgs& a, std::ostream& out, std::ostream& err) {
  const auto graph = load(a.instance, err);
  const auto doc = io::parse_json_file(a.solutions);
  const auto spec = ProblemSpec::for_graph(graph, a.instance.districts, Tolerance::parse(a.instance.epsilon));
  const auto clusterings = io::read_clusterings(doc, graph);
  std::ostringstream csv;
  csv << "solution,cluster,counties,districts,population,deviation_percent\n";
  for (std::size_t s = 0; s < clusterings.size(); ++s) {
    const auto report = population_deviation(clusterings[s], graph, spec);
    for (std::size_t c = 0; c < report.entries.size(); ++c) {
      const auto& e = report.entries[c];
      std::string ids;
      for (const auto& id : graph.ids_of(e.cluster.counties)) ids += (ids.empty() ? "" : " ") + id;
      csv << s << "," << c << "," << ids << "," << e.cluster.districts << "," << e.population << ","
          << io::fixed6(e.percent) << "\n";
    }
    csv << s << ",mean_absolute,,,," << io::fixed6(report.mean_absolute) << "\n";
    csv << s << ",mean_signed,,,," << io::fixed6(report.mean_signed) << "\n";
  }
  emit(a.out, csv.str(), out);
  return kOk;
}

struct SplitsArgs {
  std::string solutions, out;
};

int cmd_splits(const SplitsArgs& a, std::ostream& out) {
  const auto doc = io::parse_json_file(a.solutions);
  const auto graph = id_universe(io::universe_of(doc));
  std::ostringstream csv;
  csv << "solution,clusters,districts,counties,split_lower_bound,traversal_lower_bound\n";
  const auto clusterings = io::read_clusterings(doc, graph);
  for (std::size_t s = 0; s < clusterings.size(); ++s) {
    const auto& c = clusterings[s];
    csv << s << "," << c.size() << "," << c.total_districts() << "," << c.counties().size() << ","
        << split_lower_bound(c) << "," << traversal_lower_bound(c) << "\n";
  }
  emit(a.out, csv.str(), out);
  return kOk;
}

struct VerifyArgs {
  InstanceArgs instance;
  std::size_t cap = oracle::kDefaultCap;
  unsigned threads = 0;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const auto graph = load(a.instance, err);
  const auto spec = ProblemSpec::for_graph(graph, a.instance.districts, Tolerance::parse(a.instance.epsilon));
  const auto expected = oracle::brute_force_optimal(graph, spec, a.cap);
  const auto all = oracle::brute_force_all_clusterings(graph, spec, a.cap);
  out << "valid clusterings: " << all.size() << "\n";
  if (expected.empty()) {
    out << "oracle: infeasible\n";
    try {
      SolverOptions o;
      o.threads = a.threads;
      optimal_clusterings(graph, spec, o);
    } catch (const InfeasibleError&) {
      out << "solver: infeasible\nagree\n";
      return kOk;
    }
    out << "solver: found solutions\ndisagree\n";
    return kInternal;
  }
  SolverOptions o;
  o.threads = a.threads;
  const auto got = optimal_clusterings(graph, spec, o);
  out << "oracle optimal: " << expected.size() << "\n";
  out << "solver optimal: " << got.size() << "\n";
  const bool same = got.clusterings == expected.clusterings && got.signature == expected.signature;
  out << (same ? "agree" : "disagree") << "\n";
  return same ? kOk : kInternal;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact county clustering solver and analysis tools", "cluster_forge"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* c_solve = app.add_subcommand("solve", "enumerate every optimal clustering (most 1-county clusters, then "
                                              "most 2-county clusters, and so on)");
  add_solver(c_solve, solve);

  SolveArgs relax;
  auto* c_relax = app.add_subcommand("relax", "stage-wise search for clusterings with many clusters, keeping "
                                              "partial solutions within FUZZ of the best relaxed measure");
  add_solver(c_relax, relax);
  c_relax->add_option("--fuzz,-f", relax.fuzz, "retention slack; default 3 when D <= 50, else 2");

  CompareArgs compare;
  auto* c_compare = app.add_subcommand("compare", "DC and VI between every pair of solutions of two solution "
                                                  "documents; CSV a_index,b_index,dc_percent,vi_bits_per_county");
  c_compare->add_option("A", compare.a, "solution JSON (solve/relax output or a bare cluster array)")->required();
  c_compare->add_option("B", compare.b, "solution JSON")->required();
  c_compare->add_flag("--dc-ignore-districts", compare.ignore_districts,
                      "clusters with the same counties match regardless of district count");
  c_compare->add_option("--out,-o", compare.out, "write the CSV here");

  ApcArgs apc;
  auto* c_apc = app.add_subcommand("apc", "average population change between two population CSVs (id,population)");
  c_apc->add_option("X", apc.x, "first series CSV")->required();
  c_apc->add_option("Y", apc.y, "second series CSV")->required();

  StabilityArgs stability;
  auto* c_stab = app.add_subcommand(
      "stability", "solve for every series CSV in --series (sorted by file name, labelled by stem), then chain "
                   "clusterings greedily by fewest different clusters and smallest VI; CSV per transition");
  add_solver(c_stab, stability.solve);
  c_stab->add_option("--series", stability.series_dir, "directory of id,population CSV files")->required();
  c_stab->add_option("--initial", stability.initial, "solution JSON holding the starting clustering");
  c_stab->add_option("--initial-index", stability.initial_index, "which solution of --initial to start from");
  c_stab->add_flag("--dc-ignore-districts", stability.ignore_districts,
                   "clusters with the same counties match regardless of district count");

  DeviationArgs deviation;
  auto* c_dev = app.add_subcommand("deviation", "per-cluster percent deviation of the average district population "
                                                "from ideal; CSV with per-solution means");
  c_dev->add_option("S", deviation.solutions, "solution JSON")->required();
  add_instance(c_dev, deviation.instance, false);
  c_dev->add_option("--out,-o", deviation.out, "write the CSV here");

  SplitsArgs splits;
  auto* c_splits = app.add_subcommand("splits", "county-split and traversal lower bounds for every solution");
  c_splits->add_option("S", splits.solutions, "solution JSON")->required();
  c_splits->add_option("--out,-o", splits.out, "write the CSV here");

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "compare the solver with exhaustive enumeration on a small instance");
  add_instance(c_verify, verify.instance);
  c_verify->add_option("--cap", verify.cap, "largest county count the exhaustive search accepts")
      ->capture_default_str();
  c_verify->add_option("--threads,-j", verify.threads, "solver worker threads, 0 = all available");

  std::vector<const char*> argv{"cluster_forge"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (c_solve->parsed()) return cmd_solve(solve, out, err);
    if (c_relax->parsed()) return cmd_relax(relax, out, err);
    if (c_compare->parsed()) return cmd_compare(compare, out);
    if (c_apc->parsed()) return cmd_apc(apc, out);
    if (c_stab->parsed()) return cmd_stability(stability, out, err);
    if (c_dev->parsed()) return cmd_deviation(deviation, out, err);
    if (c_splits->parsed()) return cmd_splits(splits, out);
    if (c_verify->parsed()) return cmd_verify(verify, out, err);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const fs::filesystem_error& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}

}  // namespace cluster_forge::cli
