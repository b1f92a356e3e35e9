#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace cayley {

using Element = int;

/// Dense bitset over element indices [0, n).
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(int n) : n_(n), words_((static_cast<std::size_t>(n) + 63) / 64, 0) {}
  ElementSet(int n, std::initializer_list<Element> xs) : ElementSet(n) {
    for (Element x : xs) insert(x);
  }

  static ElementSet full(int n) {
    ElementSet s(n);
    for (Element x = 0; x < n; ++x) s.insert(x);
    return s;
  }

  template <class Range>
  static ElementSet of(int n, const Range& xs) {
    ElementSet s(n);
    for (Element x : xs) s.insert(x);
    return s;
  }

  int universe() const noexcept { return n_; }

  bool contains(Element x) const noexcept {
    return (words_[static_cast<std::size_t>(x) >> 6] >> (x & 63)) & 1u;
  }
  void insert(Element x) noexcept { words_[static_cast<std::size_t>(x) >> 6] |= std::uint64_t{1} << (x & 63); }
  void erase(Element x) noexcept { words_[static_cast<std::size_t>(x) >> 6] &= ~(std::uint64_t{1} << (x & 63)); }

  int count() const noexcept {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool empty() const noexcept { return count() == 0; }

  /// Members in ascending order.
  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(static_cast<std::size_t>(count()));
    for_each([&](Element x) { out.push_back(x); });
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        int b = std::countr_zero(bits);
        f(static_cast<Element>(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
  }

  bool is_subset_of(const ElementSet& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  ElementSet& operator|=(const ElementSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  ElementSet& operator&=(const ElementSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;
  friend auto operator<=>(const ElementSet& a, const ElementSet& b) {
    return a.words_ <=> b.words_;
  }

  std::size_t hash() const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto w : words_) h = (h ^ w) * 1099511628211ull;
    return h;
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// A subgroup is stored as the set of its members; the owning group is
/// always passed alongside at call sites.
using SubgroupSet = ElementSet;

}  // namespace cayley

template <>
struct std::hash<cayley::ElementSet> {
  std::size_t operator()(const cayley::ElementSet& s) const noexcept { return s.hash(); }
};
