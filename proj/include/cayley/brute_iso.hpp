#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "cayley/budget.hpp"
#include "cayley/group_ops.hpp"
#include "cayley/perm.hpp"
#include "cayley/table.hpp"

namespace cayley {

namespace detail {

// (order, class size) per element.
inline std::vector<std::pair<int, int>> element_invariants(const GroupTable& g) {
  const auto cc = conjugacy_classes(g);
  std::vector<std::pair<int, int>> inv(static_cast<std::size_t>(g.size()));
  for (Element x = 0; x < g.size(); ++x)
    inv[static_cast<std::size_t>(x)] = {g.order(x), static_cast<int>(cc.classes[static_cast<std::size_t>(cc.class_of[static_cast<std::size_t>(x)])].size())};
  return inv;
}

}  // namespace detail

/// Isomorphism G -> H by backtracking over images of a greedy generating
/// set, extending each partial assignment along the Cayley graph of the
/// generated subgroup. Throws BudgetExceeded when the deadline passes.
inline std::optional<Perm> brute_iso_group(const GroupTable& g, const GroupTable& h, double time_budget = 30.0) {
  const int n = g.size();
  if (h.size() != n) return std::nullopt;
  const auto ig = detail::element_invariants(g);
  const auto ih = detail::element_invariants(h);
  {
    auto a = ig, b = ih;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  const Deadline deadline(time_budget);
  const auto gens = greedy_generators(g, ElementSet::full(n));
  std::vector<Element> images;
  std::vector<Element> map(static_cast<std::size_t>(n), -1), used(static_cast<std::size_t>(n), -1);
  std::size_t steps = 0;

  // Extends the map over <gens[0..depth)>; false on a clash.
  auto extend = [&](std::size_t depth) {
    std::fill(map.begin(), map.end(), -1);
    std::fill(used.begin(), used.end(), -1);
    std::vector<Element> queue{g.identity()};
    map[static_cast<std::size_t>(g.identity())] = h.identity();
    used[static_cast<std::size_t>(h.identity())] = g.identity();
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const Element x = queue[qi];
      for (std::size_t i = 0; i < depth; ++i) {
        const Element y = g.mul(x, gens[i]);
        const Element fy = h.mul(map[static_cast<std::size_t>(x)], images[i]);
        if (map[static_cast<std::size_t>(y)] >= 0) {
          if (map[static_cast<std::size_t>(y)] != fy) return false;
          continue;
        }
        if (used[static_cast<std::size_t>(fy)] >= 0) return false;
        map[static_cast<std::size_t>(y)] = fy;
        used[static_cast<std::size_t>(fy)] = y;
        queue.push_back(y);
      }
    }
    // a consistent Cayley-graph map on <gens> is a homomorphism there
    return true;
  };

  std::function<bool(std::size_t)> rec = [&](std::size_t depth) {
    if ((steps++ & 255) == 0) deadline.check("brute_iso_group");
    if (!extend(depth)) return false;
    if (depth == gens.size()) {
      for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y)
          if (map[static_cast<std::size_t>(g.mul(x, y))] != h.mul(map[static_cast<std::size_t>(x)], map[static_cast<std::size_t>(y)])) return false;
      return true;
    }
    const auto want = ig[static_cast<std::size_t>(gens[depth])];
    for (Element y = 0; y < n; ++y) {
      if (ih[static_cast<std::size_t>(y)] != want) continue;
      images.push_back(y);
      if (rec(depth + 1)) return true;
      images.pop_back();
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return Perm(std::vector<int>(map.begin(), map.end()));
}

/// Isomorphism Q1 -> Q2 by depth-first search over images of a generating
/// set, propagating products of mapped elements. Throws BudgetExceeded when
/// the deadline passes.
inline std::optional<Perm> brute_iso_quasigroup(const QuasigroupTable& q1, const QuasigroupTable& q2, double time_budget = 30.0) {
  const int n = q1.size();
  if (q2.size() != n) return std::nullopt;
  auto idempotents = [](const QuasigroupTable& q) {
    int c = 0;
    for (Element x = 0; x < q.size(); ++x) c += q(x, x) == x;
    return c;
  };
  if (idempotents(q1) != idempotents(q2)) return std::nullopt;

  const Deadline deadline(time_budget);
  // Greedy generators: least element outside the current subquasigroup.
  std::vector<Element> gens;
  {
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    std::vector<Element> members;
    for (Element x = 0; x < n; ++x) {
      if (in[static_cast<std::size_t>(x)]) continue;
      gens.push_back(x);
      in[static_cast<std::size_t>(x)] = 1;
      members.push_back(x);
      for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
          for (Element z : {q1(members[i], members[j]), q1(members[j], members[i])})
            if (!in[static_cast<std::size_t>(z)]) {
              in[static_cast<std::size_t>(z)] = 1;
              members.push_back(z);
            }
    }
  }

  std::vector<Element> map(static_cast<std::size_t>(n), -1), used(static_cast<std::size_t>(n), -1);
  std::vector<Element> mapped;
  std::size_t steps = 0;

  // Assigns x -> y and closes under products; returns false on a clash.
  auto assign = [&](Element x, Element y) {
    std::vector<std::pair<Element, Element>> work{{x, y}};
    while (!work.empty()) {
      auto [a, b] = work.back();
      work.pop_back();
      if (map[static_cast<std::size_t>(a)] >= 0) {
        if (map[static_cast<std::size_t>(a)] != b) return false;
        continue;
      }
      if (used[static_cast<std::size_t>(b)] >= 0) return false;
      map[static_cast<std::size_t>(a)] = b;
      used[static_cast<std::size_t>(b)] = a;
      mapped.push_back(a);
      for (Element m : mapped) {
        const Element fm = map[static_cast<std::size_t>(m)];
        work.push_back({q1(a, m), q2(b, fm)});
        work.push_back({q1(m, a), q2(fm, b)});
      }
    }
    return true;
  };

  std::function<bool(std::size_t)> rec = [&](std::size_t depth) {
    if ((steps++ & 255) == 0) deadline.check("brute_iso_quasigroup");
    if (depth == gens.size()) return true;
    const Element x = gens[depth];
    if (map[static_cast<std::size_t>(x)] >= 0) return rec(depth + 1);
    for (Element y = 0; y < n; ++y) {
      if (used[static_cast<std::size_t>(y)] >= 0) continue;
      const auto saved_map = map;
      const auto saved_used = used;
      const auto saved_mapped = mapped.size();
      if (assign(x, y) && rec(depth + 1)) return true;
      map = saved_map;
      used = saved_used;
      mapped.resize(saved_mapped);
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      if (map[static_cast<std::size_t>(q1(x, y))] != q2(map[static_cast<std::size_t>(x)], map[static_cast<std::size_t>(y)]))
        throw std::logic_error("brute_iso_quasigroup: propagated map is not an isomorphism");
  return Perm(std::vector<int>(map.begin(), map.end()));
}

}  // namespace cayley
