#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>

#include "doctest.h"

#include "cluster_forge/cli.hpp"
#include "cluster_forge/io.hpp"
#include "../support/helpers.hpp"

using namespace cluster_forge;
using cluster_forge::testing::fixture;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> instance(const std::string& name, const std::string& districts) {
  return {"--counties", fixture(name + "/counties.csv"), "--adjacency", fixture(name + "/adjacency.csv"), "-D",
          districts, "-q"};
}

std::vector<std::string> operator+(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("cluster_forge_test_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  [[nodiscard]] std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string golden(const std::string& name) { return io::read_file(std::string(CF_GOLDEN_DIR) + "/" + name); }

}  // namespace

TEST_CASE("solve on the triangle") {
  const auto r = run(std::vector<std::string>{"solve"} + instance("triangle", "3"));
  CHECK(r.code == 0);
  const auto j = io::Json::parse(r.out);
  CHECK(j["solutions"].size() == 1);
  CHECK(j["signature"] == io::Json::parse("[3]"));
  CHECK(r.out == golden("triangle_solve.json"));
}

TEST_CASE("golden outputs for the path and the grid") {
  CHECK(run(std::vector<std::string>{"solve"} + instance("path", "2")).out == golden("path_solve.json"));
  CHECK(run(std::vector<std::string>{"relax", "--fuzz", "1"} + instance("path", "2")).out == golden("path_relax.json"));
  CHECK(run(std::vector<std::string>{"solve"} + instance("grid30", "21")).out == golden("grid30_solve.json"));
  CHECK(run(std::vector<std::string>{"relax", "--fuzz", "2"} + instance("grid30", "21")).out ==
        golden("grid30_relax.json"));
}

TEST_CASE("exit codes") {
  const auto infeasible = run(std::vector<std::string>{"solve"} + instance("infeasible", "3"));
  CHECK(infeasible.code == 3);
  CHECK(infeasible.err.find("minimum district population 4 exceeds maximum 3") != std::string::npos);

  CHECK(run({"solve", "--counties", "/nonexistent.csv", "--adjacency", "/nonexistent.csv", "-D", "2"}).code == 2);
  CHECK(run({"solve"}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run(std::vector<std::string>{"solve", "--epsilon", "1/0"} + instance("path", "2")).code == 2);
}

TEST_CASE("every subcommand documents itself") {
  for (const std::string cmd : {"solve", "relax", "compare", "apc", "stability", "deviation", "splits", "verify"}) {
    const auto r = run({cmd, "--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("--") != std::string::npos);
  }
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("outputs written to files, with a compressed copy") {
  TempDir tmp;
  const auto r = run(std::vector<std::string>{"relax", "--fuzz", "2", "--out", tmp.file("s.json"), "--compressed-out",
                                              tmp.file("c.json")} +
                     instance("grid30", "21"));
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(tmp.path)) ++entries;
  CHECK(entries == 2);

  const auto graph = load_graph(fixture("grid30/counties.csv"), fixture("grid30/adjacency.csv"));
  const auto full = io::read_clusterings(io::parse_json_file(tmp.file("s.json")), graph);
  const auto compressed = io::read_compressed(io::parse_json_file(tmp.file("c.json")), graph);
  CHECK(expand_solutions(compressed, graph).clusterings == full);
}

TEST_CASE("compare, splits and deviation") {
  TempDir tmp;
  REQUIRE(run(std::vector<std::string>{"solve", "--out", tmp.file("p.json")} + instance("path", "2")).code == 0);
  const auto cmp = run({"compare", tmp.file("p.json"), tmp.file("p.json")});
  CHECK(cmp.code == 0);
  CHECK(cmp.out ==
        "a_index,b_index,dc_percent,vi_bits_per_county\n"
        "0,0,0.000000,0.000000\n"
        "0,1,100.000000,1.333333\n"
        "1,0,100.000000,1.333333\n"
        "1,1,0.000000,0.000000\n");

  io::atomic_write(tmp.file("bare.json"), R"([{"counties":["A","B"],"districts":1}])");
  CHECK(run({"compare", tmp.file("p.json"), tmp.file("bare.json")}).code == 2);

  const auto splits = run({"splits", tmp.file("p.json")});
  CHECK(splits.code == 0);
  CHECK(splits.out ==
        "solution,clusters,districts,counties,split_lower_bound,traversal_lower_bound\n"
        "0,2,2,3,0,1\n"
        "1,2,2,3,0,1\n");

  const auto dev = run({"deviation", tmp.file("p.json"), "-D", "2", "--counties", fixture("path/counties.csv")});
  CHECK(dev.code == 0);
  CHECK(dev.out.find("\n0,0,A B,1,105,5.000000\n0,1,C,1,95,-5.000000\n") != std::string::npos);
  CHECK(dev.out.find("0,mean_absolute,,,,5.000000") != std::string::npos);
}

TEST_CASE("apc between population files") {
  TempDir tmp;
  io::atomic_write(tmp.file("x.csv"), "id,population\nA,100\nB,100\n");
  io::atomic_write(tmp.file("y.csv"), "id,population\nA,110\nB,90\n");
  const auto r = run({"apc", tmp.file("x.csv"), tmp.file("y.csv")});
  CHECK(r.code == 0);
  CHECK(r.out == "10.025063\n");
  io::atomic_write(tmp.file("z.csv"), "id,population\nA,110\n");
  CHECK(run({"apc", tmp.file("x.csv"), tmp.file("z.csv")}).code == 2);
}

TEST_CASE("stability over a population series uses the cache") {
  TempDir tmp;
  ::setenv("CLUSTER_FORGE_CACHE", tmp.file("cache").c_str(), 1);
  const std::vector<std::string> args{"stability",  "--series",  fixture("series/populations"),
                                      "--counties", fixture("series/counties.csv"),
                                      "--adjacency", fixture("series/adjacency.csv"),
                                      "-D",         "21"};
  const auto first = run(args);
  REQUIRE(first.code == 0);
  CHECK(first.err.find("cache hit") == std::string::npos);
  const auto second = run(args);
  CHECK(second.code == 0);
  CHECK(second.err.find("cache hit") != std::string::npos);
  CHECK(first.out == second.out);
  CHECK(first.out.rfind("from,to,dc_percent,vi_bits_per_county,apc_percent_per_county,vi_over_apc", 0) == 0);
  CHECK(first.out.find("\n2010,2011,") != std::string::npos);
  CHECK(first.out.find("\n2011,2012,") != std::string::npos);
  ::unsetenv("CLUSTER_FORGE_CACHE");
}

TEST_CASE("verify agrees on the small fixtures") {
  for (const auto& [name, d] : std::vector<std::pair<std::string, std::string>>{
           {"triangle", "3"}, {"path", "2"}, {"path_heavy", "3"}}) {
    const auto r = run(std::vector<std::string>{"verify"} + instance(name, d));
    CHECK(r.code == 0);
    CHECK(r.out.find("\nagree\n") != std::string::npos);
  }
}

TEST_CASE("output bytes do not depend on runs or threads") {
  for (const std::string cmd : {"solve", "relax"}) {
    const auto base = std::vector<std::string>{cmd} + instance("grid30", "21");
    const auto one = run(base + std::vector<std::string>{"--threads", "1"}).out;
    for (int k = 0; k < 3; ++k) CHECK(run(base + std::vector<std::string>{"--threads", "8"}).out == one);
  }
}
