#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace cluster_forge {

/// Dense index of a county inside a CountyGraph. Indices follow the
/// ascending string order of county ids.
using CountyIndex = std::size_t;

/// Fixed-capacity bitset over county indices.
///
/// The capacity covers every US state (Texas has 254 counties). Graphs with
/// more vertices are rejected at construction time.
class CountySet {
 public:
  static constexpr std::size_t kCapacity = 256;
  static constexpr std::size_t kWords = kCapacity / 64;

  constexpr CountySet() = default;

  static CountySet of(std::initializer_list<CountyIndex> members) {
    CountySet s;
    for (CountyIndex i : members) s.insert(i);
    return s;
  }

  /// The set {0, 1, ..., count - 1}.
  static CountySet first_n(std::size_t count) {
    CountySet s;
    for (std::size_t w = 0; w < kWords && count > 0; ++w) {
      const std::size_t take = count >= 64 ? 64 : count;
      s.words_[w] = take == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << take) - 1);
      count -= take;
    }
    return s;
  }

  void insert(CountyIndex i) { words_[i >> 6] |= bit(i); }
  void erase(CountyIndex i) { words_[i >> 6] &= ~bit(i); }
  [[nodiscard]] bool contains(CountyIndex i) const { return (words_[i >> 6] & bit(i)) != 0; }

  [[nodiscard]] std::size_t size() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  [[nodiscard]] bool empty() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  /// Smallest member; undefined on an empty set.
  [[nodiscard]] CountyIndex lowest() const {
    for (std::size_t w = 0; w < kWords; ++w)
      if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return kCapacity;
  }

  CountyIndex pop_lowest() {
    const CountyIndex i = lowest();
    erase(i);
    return i;
  }

  [[nodiscard]] bool intersects(const CountySet& o) const {
    for (std::size_t w = 0; w < kWords; ++w)
      if ((words_[w] & o.words_[w]) != 0) return true;
    return false;
  }

  [[nodiscard]] bool is_subset_of(const CountySet& o) const {
    for (std::size_t w = 0; w < kWords; ++w)
      if ((words_[w] & ~o.words_[w]) != 0) return false;
    return true;
  }

  /// Members strictly greater than i.
  [[nodiscard]] CountySet above(CountyIndex i) const {
    CountySet r = *this;
    const std::size_t word = i >> 6;
    for (std::size_t w = 0; w < word; ++w) r.words_[w] = 0;
    const std::size_t shift = (i & 63) + 1;
    r.words_[word] &= shift == 64 ? 0 : (~std::uint64_t{0} << shift);
    return r;
  }

  CountySet& operator|=(const CountySet& o) {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] |= o.words_[w];
    return *this;
  }
  CountySet& operator&=(const CountySet& o) {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] &= o.words_[w];
    return *this;
  }
  CountySet& operator-=(const CountySet& o) {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] &= ~o.words_[w];
    return *this;
  }

  friend CountySet operator|(CountySet a, const CountySet& b) { return a |= b; }
  friend CountySet operator&(CountySet a, const CountySet& b) { return a &= b; }
  friend CountySet operator-(CountySet a, const CountySet& b) { return a -= b; }
  friend bool operator==(const CountySet&, const CountySet&) = default;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < kWords; ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  [[nodiscard]] std::vector<CountyIndex> to_vector() const {
    std::vector<CountyIndex> out;
    out.reserve(size());
    for_each([&](CountyIndex i) { out.push_back(i); });
    return out;
  }

  [[nodiscard]] std::size_t hash() const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto w : words_) h = (h ^ std::hash<std::uint64_t>{}(w)) * 0x100000001b3ULL;
    return h;
  }

 private:
  static constexpr std::uint64_t bit(CountyIndex i) { return std::uint64_t{1} << (i & 63); }

  std::array<std::uint64_t, kWords> words_{};
};

/// Lexicographic comparison of the ascending member lists.
bool lex_less(const CountySet& a, const CountySet& b);

struct CountySetHash {
  std::size_t operator()(const CountySet& s) const { return s.hash(); }
};

}  // namespace cluster_forge
