#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cayley/group_ops.hpp"

namespace cayley {

/// Calls `visit` on every generating tuple of exactly `len` elements in which
/// no coordinate lies in the span of the earlier ones, in lexicographic
/// order. For len = d(G) these are all generating tuples of that length.
/// `visit` returns false to stop early.
inline void for_each_generating_tuple(const GroupTable& g, int len,
                                      const std::function<bool(const std::vector<Element>&)>& visit) {
  const int n = g.size();
  std::vector<Element> tuple;
  std::vector<ElementSet> spans{trivial_subgroup(g)};
  bool stop = false;
  std::function<void()> rec = [&] {
    if (stop) return;
    const int depth = static_cast<int>(tuple.size());
    if (depth == len) {
      if (spans.back().count() == n) stop = !visit(tuple);
      return;
    }
    for (Element x = 0; x < n && !stop; ++x) {
      if (spans.back().contains(x)) continue;
      tuple.push_back(x);
      spans.push_back(closure(g, tuple));
      rec();
      spans.pop_back();
      tuple.pop_back();
    }
  };
  if (len == 0) {
    if (n == 1) visit(tuple);
    return;
  }
  rec();
}

/// Lexicographically first generating tuple of minimal length, provided that
/// length is at most d.
inline std::optional<std::vector<Element>> is_d_generated(const GroupTable& g, int d) {
  for (int len = 0; len <= d; ++len) {
    std::optional<std::vector<Element>> found;
    for_each_generating_tuple(g, len, [&](const std::vector<Element>& t) {
      found = t;
      return false;
    });
    if (found) return found;
  }
  return std::nullopt;
}

}  // namespace cayley
