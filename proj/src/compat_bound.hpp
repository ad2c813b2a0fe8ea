#pragma once

#include <array>
#include <cstdint>

#include "cluster_forge/county_set.hpp"

namespace cluster_forge::detail {

// Union-find over county indices, fed one candidate cluster at a time.
class CompatibilityBound {
 public:
  void add(const CountySet& counties) {
    const CountyIndex root = counties.lowest();
    counties.for_each([&](CountyIndex i) {
      touch(i);
      unite(root, i);
    });
  }

  [[nodiscard]] std::size_t value(std::size_t n) {
    std::array<std::uint16_t, CountySet::kCapacity> sizes{};
    touched_.for_each([&](CountyIndex i) { ++sizes[find(i)]; });
    std::size_t total = 0;
    touched_.for_each([&](CountyIndex i) {
      if (parent_[i] == i) total += sizes[i] / n;
    });
    return total;
  }

 private:
  void touch(CountyIndex i) {
    if (!touched_.contains(i)) {
      touched_.insert(i);
      parent_[i] = static_cast<std::uint16_t>(i);
    }
  }

  CountyIndex find(CountyIndex i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  void unite(CountyIndex a, CountyIndex b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b)
      parent_[b] = static_cast<std::uint16_t>(a);
    else
      parent_[a] = static_cast<std::uint16_t>(b);
  }

  CountySet touched_;
  std::array<std::uint16_t, CountySet::kCapacity> parent_{};
};

}  // namespace cluster_forge::detail
