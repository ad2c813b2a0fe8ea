#include <random>

#include "doctest.h"

#include "cluster_forge/errors.hpp"
#include "cluster_forge/metrics.hpp"
#include "cluster_forge/oracle.hpp"
#include "cluster_forge/solver.hpp"
#include "../support/helpers.hpp"
#include "../support/random_instance.hpp"

using namespace cluster_forge;
using namespace cluster_forge::testing;

namespace {

CountyGraph points(std::size_t n) {
  std::vector<std::pair<std::string, Population>> pops;
  for (std::size_t i = 0; i < n; ++i) pops.push_back({county_id(i), 100});
  return make_graph(pops, {});
}

Clustering blocks(const CountyGraph& g, const std::vector<std::vector<std::size_t>>& parts, std::int64_t d = 1) {
  std::vector<Cluster> out;
  for (const auto& p : parts) {
    CountySet s;
    for (auto i : p) s.insert(i);
    out.push_back({s, d});
  }
  return clustering(out);
}

Clustering random_partition(std::mt19937_64& rng, std::size_t n) {
  std::vector<Cluster> out;
  std::uniform_int_distribution<std::size_t> label(0, n - 1);
  std::vector<CountySet> groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[label(rng)].insert(i);
  for (const auto& s : groups)
    if (!s.empty()) out.push_back({s, std::uniform_int_distribution<std::int64_t>(1, 2)(rng)});
  return clustering(out);
}

}  // namespace

TEST_CASE("different clusters examples") {
  const auto g = points(8);
  const auto a = blocks(g, {{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  CHECK(different_clusters(a, a) == 0.0);
  const auto b = blocks(g, {{0, 1}, {2, 3}, {4, 6}, {5, 7}});
  CHECK(different_clusters(a, b) == doctest::Approx(50.0));
  const auto c = blocks(g, {{0, 1}, {2, 3, 4, 5, 6, 7}});
  const auto d = blocks(g, {{0, 1}, {2, 3}, {4}, {5}, {6}, {7}});
  CHECK(different_clusters(blocks(g, {{0, 1}, {2, 3}, {4, 5, 6, 7}}), blocks(g, {{0, 1}, {2, 3}, {4}, {5}, {6, 7}})) ==
        doctest::Approx(50.0));
  CHECK(different_clusters(c, d) == doctest::Approx(100.0 * (1.0 - 1.0 / 4.0)));
}

TEST_CASE("district counts matter for DC unless ignored") {
  const auto g = points(2);
  const auto a = blocks(g, {{0}, {1}}, 1);
  const auto b = blocks(g, {{0}, {1}}, 2);
  CHECK(different_clusters(a, b) == doctest::Approx(100.0));
  CHECK(different_clusters(a, b, true) == 0.0);
  CHECK(variation_of_information(a, b) == 0.0);
}

TEST_CASE("variation of information examples") {
  const auto g = points(4);
  CHECK(variation_of_information(blocks(g, {{0, 1}, {2, 3}}), blocks(g, {{0, 2}, {1, 3}})) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(variation_of_information(blocks(g, {{0, 1, 2, 3}}), blocks(g, {{0, 1}, {2, 3}})) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(variation_of_information(blocks(g, {{0, 1}, {2, 3}}), blocks(g, {{0, 1}, {2, 3}})) == 0.0);
}

TEST_CASE("mismatched universes are input errors") {
  const auto g = points(4);
  const auto a = blocks(g, {{0, 1}, {2, 3}});
  const auto b = blocks(g, {{0, 1}, {2}});
  CHECK_THROWS_AS(different_clusters(a, b), InputError);
  CHECK_THROWS_AS(variation_of_information(a, b), InputError);
}

TEST_CASE("average population change examples") {
  PopulationSeries x("x", {{"A", 100}});
  CHECK(average_population_change(x, x) == 0.0);
  PopulationSeries y("y", {{"A", 110}});
  CHECK(average_population_change(x, y) == doctest::Approx(100.0 * 10.0 / 105.0));
  PopulationSeries x2("x", {{"A", 100}, {"B", 100}});
  PopulationSeries y2("y", {{"A", 110}, {"B", 90}});
  CHECK(average_population_change(x2, y2) == doctest::Approx(10.025063).epsilon(1e-7));
  PopulationSeries zero("z", {{"A", 0}});
  CHECK_THROWS_AS(average_population_change(zero, zero), InputError);
  CHECK_THROWS_AS(average_population_change(x, x2), InputError);
}

TEST_CASE("metric symmetry and identity on random pairs") {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
    const auto a = random_partition(rng, n);
    const auto b = trial % 5 == 0 ? a : random_partition(rng, n);
    CHECK(different_clusters(a, b) == doctest::Approx(different_clusters(b, a)).epsilon(1e-12));
    CHECK(variation_of_information(a, b) == doctest::Approx(variation_of_information(b, a)).epsilon(1e-12));
    CHECK((different_clusters(a, b) == 0.0) == (a == b));
    CHECK((std::abs(variation_of_information(a, b)) < 1e-9) == (a.partition() == b.partition()));
  }
}

TEST_CASE("variation of information obeys the triangle inequality") {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
    const auto a = random_partition(rng, n), b = random_partition(rng, n), c = random_partition(rng, n);
    CHECK(variation_of_information(a, c) <= variation_of_information(a, b) + variation_of_information(b, c) + 1e-9);
  }
}

TEST_CASE("stability chain picks the fewest different clusters") {
  const auto g = points(8);
  const auto current = blocks(g, {{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  const auto close = blocks(g, {{0, 1}, {2, 3}, {4, 5}, {6}, {7}});
  const auto far = blocks(g, {{0, 1}, {2, 4}, {3, 5}, {6, 7}});
  SolutionSet first(ProblemSpec(4, {}, 400)), second(ProblemSpec(4, {}, 400));
  first.clusterings = {current};
  second.clusterings = {far, close};
  PopulationSeries s1("2010", {{"c00", 1}}), s2("2011", {{"c00", 1}});
  const auto chain = stability_chain({first, second}, {s1, s2}, current);
  REQUIRE(chain.size() == 1);
  CHECK(chain[0].chosen_index == 1);
  CHECK(chain[0].chosen == close);
  CHECK(chain[0].apc == 0.0);
  CHECK_FALSE(chain[0].vi_over_apc.has_value());
  CHECK_THROWS_AS(stability_chain({first, SolutionSet(first.spec)}, {s1, s2}, current), InputError);
}

TEST_CASE("stability chain over identical years stays put") {
  const auto g = triangle();
  const auto spec = ProblemSpec::for_graph(g, 3);
  const auto set = optimal_clusterings(g, spec);
  PopulationSeries s("y", {{"A", 100}, {"B", 100}, {"C", 100}});
  const auto chain = stability_chain({set, set, set}, {s, s, s}, set.clusterings[0]);
  REQUIRE(chain.size() == 2);
  for (const auto& r : chain) {
    CHECK(r.dc == 0.0);
    CHECK(r.vi == 0.0);
  }
}

TEST_CASE("population deviation") {
  const auto g = make_graph({{"A", 210}, {"B", 100}, {"C", 690}}, {{"A", "B"}, {"B", "C"}});
  const auto spec = ProblemSpec::for_graph(g, 10);
  const auto r = population_deviation(clustering({cl(g, {"A"}, 2), cl(g, {"B"}, 1), cl(g, {"C"}, 7)}), g, spec);
  REQUIRE(r.entries.size() == 3);
  CHECK(r.entries[0].percent == doctest::Approx(5.0));
  CHECK(r.entries[1].percent == doctest::Approx(0.0));
  CHECK(r.entries[2].percent == doctest::Approx(100.0 * (690.0 / 7.0 - 100.0) / 100.0));
  CHECK(r.mean_absolute == doctest::Approx((5.0 + 0.0 + std::abs(r.entries[2].percent)) / 3.0));
}

TEST_CASE("deviation stays inside the tolerance bracket") {
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = random_loose_instance(rng);
    const double ideal = static_cast<double>(inst.spec.state_population()) / static_cast<double>(inst.spec.districts());
    const double lo = 100.0 * (static_cast<double>(inst.spec.min_district_population()) - ideal) / ideal;
    const double hi = 100.0 * (static_cast<double>(inst.spec.max_district_population()) - ideal) / ideal;
    for (const auto& c : oracle::brute_force_all_clusterings(inst.graph, inst.spec))
      for (const auto& e : population_deviation(c, inst.graph, inst.spec).entries) {
        CHECK(e.percent >= lo - 1e-9);
        CHECK(e.percent <= hi + 1e-9);
        CHECK(std::abs(e.percent) <= 5.0 + 1e-9);
      }
  }
}

TEST_CASE("split and traversal bounds") {
  const auto g = points(4);
  CHECK(split_lower_bound(blocks(g, {{0}, {1}, {2}, {3}})) == 0);
  CHECK(traversal_lower_bound(blocks(g, {{0}, {1}, {2}, {3}})) == 0);
  CHECK(split_lower_bound(blocks(g, {{0, 1, 2, 3}}, 6)) == 5);
  CHECK(traversal_lower_bound(blocks(g, {{0, 1, 2, 3}})) == 3);
  // 29 clusters for 50 districts, 41 clusters over 100 counties.
  std::vector<Cluster> senate;
  for (std::size_t i = 0; i < 29; ++i) senate.push_back({CountySet::of({i}), i < 21 ? 2 : 1});
  CHECK(split_lower_bound(Clustering{senate}) == 21);
  std::vector<Cluster> house;
  for (std::size_t i = 0; i < 41; ++i) {
    CountySet s = CountySet::of({i});
    if (i == 0)
      for (std::size_t k = 41; k < 100; ++k) s.insert(k);
    house.push_back({s, 1});
  }
  CHECK(traversal_lower_bound(Clustering{house}) == 59);
}

TEST_CASE("more clusters means lower bounds") {
  std::mt19937_64 rng(97);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = random_loose_instance(rng);
    const auto all = oracle::brute_force_all_clusterings(inst.graph, inst.spec);
    if (all.empty()) continue;
    std::size_t most = 0;
    std::int64_t min_split = INT64_MAX, min_trav = INT64_MAX;
    for (const auto& c : all) {
      CHECK(split_lower_bound(c) + static_cast<std::int64_t>(c.size()) == inst.spec.districts());
      CHECK(traversal_lower_bound(c) + static_cast<std::int64_t>(c.size()) ==
            static_cast<std::int64_t>(inst.graph.size()));
      most = std::max(most, c.size());
      min_split = std::min(min_split, split_lower_bound(c));
      min_trav = std::min(min_trav, traversal_lower_bound(c));
    }
    for (const auto& c : all)
      if (c.size() == most) {
        CHECK(split_lower_bound(c) == min_split);
        CHECK(traversal_lower_bound(c) == min_trav);
      }
  }
}
