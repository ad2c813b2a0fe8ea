#include <random>

#include "doctest.h"

#include "cluster_forge/cluster_enum.hpp"
#include "../support/helpers.hpp"
#include "../support/random_instance.hpp"

using namespace cluster_forge;
using namespace cluster_forge::testing;

namespace {

std::vector<CandidateCluster> from_sets(const std::vector<CountySet>& sets) {
  std::vector<CandidateCluster> out;
  for (const auto& s : sets) out.push_back({s, 0, {1, 1}, out.size()});
  return out;
}

}  // namespace

TEST_CASE("valid clusters on the triangle") {
  const auto g = triangle();
  const ProblemSpec s(10, Tolerance{1, 20}, 1000);
  const auto ones = enumerate_valid_clusters(g.all(), 1, g, s);
  REQUIRE(ones.size() == 3);
  for (const auto& c : ones) CHECK(c.interval == DistrictInterval{1, 1});
  const auto twos = enumerate_valid_clusters(g.all(), 2, g, s);
  REQUIRE(twos.size() == 3);
  CHECK(twos[0].counties == g.set_of({"A", "B"}));
  CHECK(twos[1].counties == g.set_of({"A", "C"}));
  CHECK(twos[2].counties == g.set_of({"B", "C"}));
  for (const auto& c : twos) CHECK(c.interval == DistrictInterval{2, 2});
  for (std::size_t i = 0; i < twos.size(); ++i) CHECK(twos[i].index == i);
}

TEST_CASE("a county without a feasible district count is not a candidate") {
  const auto g = path(95, 10, 95);
  const ProblemSpec s(10, Tolerance{1, 20}, 1000);
  const auto ones = enumerate_valid_clusters(g.all(), 1, g, s);
  REQUIRE(ones.size() == 2);
  CHECK(ones[0].counties == g.set_of({"A"}));
  CHECK(ones[1].counties == g.set_of({"C"}));
}

TEST_CASE("enumeration equals brute-force subset filtering") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const auto inst = random_loose_instance(rng, 5, 12);
    const auto& g = inst.graph;
    const std::uint64_t full = (std::uint64_t{1} << g.size()) - 1;
    const std::uint64_t within_mask = std::uniform_int_distribution<std::uint64_t>(0, full)(rng) | 1;
    CountySet within;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (within_mask >> i & 1) within.insert(i);
    for (std::size_t n = 1; n <= g.size(); ++n) {
      std::vector<CountySet> expected;
      for (std::uint64_t m = 1; m <= full; ++m) {
        if ((m & within_mask) != m || static_cast<std::size_t>(__builtin_popcountll(m)) != n) continue;
        CountySet s;
        for (std::size_t i = 0; i < g.size(); ++i)
          if (m >> i & 1) s.insert(i);
        if (is_contiguous(g, s) && !district_bounds(g.population(s), inst.spec).empty()) expected.push_back(s);
      }
      std::sort(expected.begin(), expected.end(), lex_less);
      std::vector<CountySet> got;
      for (const auto& c : enumerate_valid_clusters(within, n, g, inst.spec)) got.push_back(c.counties);
      CHECK(got == expected);
    }
  }
}

TEST_CASE("prune_small_components boundaries") {
  // Components {A,B,C} (size 3), {D,E} (size 2), {F,G,H,I} (size 4).
  const auto g = make_graph({{"A", 1}, {"B", 1}, {"C", 1}, {"D", 1}, {"E", 1}, {"F", 1}, {"G", 1}, {"H", 1}, {"I", 1}},
                            {{"A", "B"}, {"B", "C"}, {"D", "E"}, {"F", "G"}, {"G", "H"}, {"H", "I"}});
  const auto cands = from_sets({g.set_of({"A", "B"}), g.set_of({"D", "E"}), g.set_of({"F", "G"}), g.set_of({"H", "I"})});
  const auto kept = prune_small_components(g.all(), 2, cands, g);
  REQUIRE(kept.size() == 3);
  CHECK(kept[0].counties == g.set_of({"D", "E"}));
  CHECK(kept[1].counties == g.set_of({"F", "G"}));
  CHECK(kept[2].counties == g.set_of({"H", "I"}));
  CHECK(kept[0].index == 1);
}

TEST_CASE("compatibility_bound examples") {
  const auto g = make_graph({{"A", 1}, {"B", 1}, {"C", 1}, {"D", 1}}, {{"A", "B"}, {"B", "C"}, {"C", "D"}});
  const auto chain = from_sets({g.set_of({"A", "B"}), g.set_of({"B", "C"})});
  CHECK(compatibility_bound(chain, 2) == 1);
  CHECK(compatibility_components(chain).size() == 1);
  const auto apart = from_sets({g.set_of({"A", "B"}), g.set_of({"C", "D"})});
  CHECK(compatibility_bound(apart, 2) == 2);
  CHECK(compatibility_components(apart).size() == 2);
  CHECK(compatibility_bound({}, 2) == 0);
}

TEST_CASE("compatibility_bound dominates the true maximum packing") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = random_loose_instance(rng, 4, 9);
    const auto& g = inst.graph;
    for (std::size_t n = 1; n <= 3; ++n) {
      auto cands = enumerate_valid_clusters(g.all(), n, g, inst.spec);
      if (cands.size() > 16) cands.resize(16);
      std::size_t best = 0;
      for (std::uint32_t m = 0; m < (1u << cands.size()); ++m) {
        CountySet used;
        bool ok = true;
        for (std::size_t i = 0; i < cands.size() && ok; ++i)
          if (m >> i & 1) {
            ok = !used.intersects(cands[i].counties);
            used |= cands[i].counties;
          }
        if (ok) best = std::max<std::size_t>(best, __builtin_popcount(m));
      }
      CHECK(compatibility_bound(cands, n) >= best);
    }
  }
}
