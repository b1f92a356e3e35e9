#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "cayley/element_set.hpp"
#include "cayley/error.hpp"
#include "cayley/table.hpp"

namespace cayley {

/// Least subgroup containing `gens`. Deterministic: generators are absorbed
/// in the given order and each pass walks members in discovery order.
inline SubgroupSet closure(const GroupTable& g, std::span<const Element> gens) {
  const int n = g.size();
  ElementSet h(n);
  h.insert(g.identity());
  std::vector<Element> members{g.identity()};
  std::vector<Element> used;
  for (Element x : gens) {
    if (h.contains(x)) continue;
    used.push_back(x);
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (Element u : used) {
        Element y = g.mul(members[i], u);
        if (!h.contains(y)) {
          h.insert(y);
          members.push_back(y);
        }
      }
    }
  }
  return h;
}

inline SubgroupSet closure(const GroupTable& g, std::initializer_list<Element> gens) {
  return closure(g, std::span<const Element>(gens.begin(), gens.size()));
}

inline SubgroupSet closure(const GroupTable& g, const ElementSet& gens) { return closure(g, gens.elements()); }

inline SubgroupSet trivial_subgroup(const GroupTable& g) {
  ElementSet s(g.size());
  s.insert(g.identity());
  return s;
}

inline bool is_subgroup(const GroupTable& g, const ElementSet& s) {
  if (!s.contains(g.identity())) return false;
  const auto xs = s.elements();
  for (Element a : xs) {
    if (!s.contains(g.inv(a))) return false;
    for (Element b : xs)
      if (!s.contains(g.mul(a, b))) return false;
  }
  return true;
}

/// All x commuting with every member of s.
inline SubgroupSet centralizer(const GroupTable& g, const ElementSet& s) {
  const auto xs = s.elements();
  ElementSet out(g.size());
  for (Element x = 0; x < g.size(); ++x) {
    bool ok = true;
    for (Element y : xs)
      if (g.mul(x, y) != g.mul(y, x)) {
        ok = false;
        break;
      }
    if (ok) out.insert(x);
  }
  return out;
}

inline SubgroupSet center(const GroupTable& g) {
  if (g.is_abelian()) return ElementSet::full(g.size());
  return centralizer(g, ElementSet::full(g.size()));
}

/// [X, Y] = < [x, y] : x in X, y in Y >.
inline SubgroupSet commutator_subgroup(const GroupTable& g, const ElementSet& x, const ElementSet& y) {
  const auto xs = x.elements();
  const auto ys = y.elements();
  ElementSet comms(g.size());
  for (Element a : xs)
    for (Element b : ys) comms.insert(g.commutator(a, b));
  return closure(g, comms.elements());
}

inline SubgroupSet derived_subgroup(const GroupTable& g) {
  auto all = ElementSet::full(g.size());
  return commutator_subgroup(g, all, all);
}

inline bool is_perfect(const GroupTable& g) { return derived_subgroup(g).count() == g.size(); }
inline bool is_centerless(const GroupTable& g) { return center(g).count() == 1; }

struct ConjugacyClasses {
  /// Classes ordered by their least member; each class sorted ascending.
  std::vector<std::vector<Element>> classes;
  /// class_of[x] indexes into classes.
  std::vector<int> class_of;
};

inline ConjugacyClasses conjugacy_classes(const GroupTable& g) {
  const int n = g.size();
  ConjugacyClasses cc;
  cc.class_of.assign(static_cast<std::size_t>(n), -1);
  for (Element x = 0; x < n; ++x) {
    if (cc.class_of[static_cast<std::size_t>(x)] >= 0) continue;
    const int id = static_cast<int>(cc.classes.size());
    std::vector<Element> cls;
    for (Element y = 0; y < n; ++y) {
      Element c = g.conjugate(x, y);
      if (cc.class_of[static_cast<std::size_t>(c)] < 0) {
        cc.class_of[static_cast<std::size_t>(c)] = id;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    cc.classes.push_back(std::move(cls));
  }
  return cc;
}

inline int element_order(const GroupTable& g, Element x) { return g.order(x); }

inline bool is_normal(const GroupTable& g, const ElementSet& s) {
  const auto xs = s.elements();
  for (Element y = 0; y < g.size(); ++y)
    for (Element x : xs)
      if (!s.contains(g.conjugate(x, y))) return false;
  return true;
}

/// G/N together with the coset map. Cosets are numbered in order of their
/// least element.
struct Quotient {
  GroupTable table;
  std::vector<int> coset_of;            // element of G -> coset index
  std::vector<Element> representative;  // coset index -> least element
};

inline Quotient quotient(const GroupTable& g, const ElementSet& normal_subgroup) {
  if (!is_subgroup(g, normal_subgroup) || !is_normal(g, normal_subgroup))
    throw Error(ErrorCode::NotNormal, "quotient requires a normal subgroup");
  const int n = g.size();
  const auto nn = normal_subgroup.elements();
  Quotient q;
  q.coset_of.assign(static_cast<std::size_t>(n), -1);
  for (Element x = 0; x < n; ++x) {
    if (q.coset_of[static_cast<std::size_t>(x)] >= 0) continue;
    const int id = static_cast<int>(q.representative.size());
    q.representative.push_back(x);
    for (Element m : nn) q.coset_of[static_cast<std::size_t>(g.mul(x, m))] = id;
  }
  const int m = static_cast<int>(q.representative.size());
  q.table = GroupTable::trusted(MulTable::from_function(m, [&](Element a, Element b) {
    return q.coset_of[static_cast<std::size_t>(g.mul(q.representative[static_cast<std::size_t>(a)],
                                                     q.representative[static_cast<std::size_t>(b)]))];
  }));
  return q;
}

/// G1 x G2 with (a, b) stored at index a * |G2| + b.
inline GroupTable direct_product(const GroupTable& g1, const GroupTable& g2) {
  const int n2 = g2.size();
  return GroupTable::trusted(MulTable::from_function(g1.size() * n2, [&](Element x, Element y) {
    return g1.mul(x / n2, y / n2) * n2 + g2.mul(x % n2, y % n2);
  }));
}

/// A subgroup as a group in its own right. Local index i corresponds to the
/// i-th smallest member.
struct InducedGroup {
  GroupTable table;
  std::vector<Element> to_parent;
  std::vector<int> from_parent;  // -1 outside the subgroup

  ElementSet lift(const ElementSet& local) const {
    ElementSet out(static_cast<int>(from_parent.size()));
    local.for_each([&](Element x) { out.insert(to_parent[static_cast<std::size_t>(x)]); });
    return out;
  }
  std::vector<Element> lift(std::span<const Element> local) const {
    std::vector<Element> out;
    out.reserve(local.size());
    for (Element x : local) out.push_back(to_parent[static_cast<std::size_t>(x)]);
    return out;
  }
};

inline InducedGroup induced_subgroup(const GroupTable& g, const ElementSet& s) {
  InducedGroup ig;
  ig.to_parent = s.elements();
  ig.from_parent.assign(static_cast<std::size_t>(g.size()), -1);
  for (std::size_t i = 0; i < ig.to_parent.size(); ++i) ig.from_parent[static_cast<std::size_t>(ig.to_parent[i])] = static_cast<int>(i);
  const int m = static_cast<int>(ig.to_parent.size());
  ig.table = GroupTable::trusted(MulTable::from_function(m, [&](Element a, Element b) {
    Element p = g.mul(ig.to_parent[static_cast<std::size_t>(a)], ig.to_parent[static_cast<std::size_t>(b)]);
    Element local = ig.from_parent[static_cast<std::size_t>(p)];
    if (local < 0) throw Error(ErrorCode::InvalidTable, "induced_subgroup: set is not closed");
    return local;
  }));
  return ig;
}

/// Greedy generating set of the subgroup s: repeatedly adds the member of
/// largest order not yet generated (ties to the smaller index).
inline std::vector<Element> greedy_generators(const GroupTable& g, const ElementSet& s) {
  std::vector<Element> gens;
  ElementSet h = trivial_subgroup(g);
  const auto members = s.elements();
  while (h.count() < s.count()) {
    Element best = -1;
    for (Element x : members)
      if (!h.contains(x) && (best < 0 || g.order(x) > g.order(best))) best = x;
    gens.push_back(best);
    h = closure(g, gens);
  }
  return gens;
}

/// Set product A*B.
inline ElementSet set_product(const GroupTable& g, const ElementSet& a, const ElementSet& b) {
  ElementSet out(g.size());
  const auto bs = b.elements();
  a.for_each([&](Element x) {
    for (Element y : bs) out.insert(g.mul(x, y));
  });
  return out;
}

/// True when G is the internal direct product A x B.
inline bool is_internal_direct_product(const GroupTable& g, const ElementSet& a, const ElementSet& b) {
  if (static_cast<long long>(a.count()) * b.count() != g.size()) return false;
  if ((a & b).count() != 1) return false;
  const auto as = a.elements();
  const auto bs = b.elements();
  for (Element x : as)
    for (Element y : bs)
      if (g.mul(x, y) != g.mul(y, x)) return false;
  return set_product(g, a, b).count() == g.size();
}

}  // namespace cayley
