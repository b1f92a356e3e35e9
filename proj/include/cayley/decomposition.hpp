#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cayley/abelian.hpp"
#include "cayley/error.hpp"
#include "cayley/generation.hpp"
#include "cayley/group_ops.hpp"

namespace cayley {

struct Decomposition {
  std::vector<SubgroupSet> factors;
  std::vector<std::vector<Element>> generators;  // certificate per factor
};

struct ClassGraph {
  std::vector<std::vector<Element>> vertices;  // irreducible noncentral classes
  std::vector<std::vector<int>> adjacency;
  std::vector<std::vector<int>> components;  // vertex indices, ordered by least vertex
};

struct SemiAbelian {
  SubgroupSet a;             // no Abelian direct factor
  std::vector<Element> bs;   // G = A x <b_1> x ... x <b_k>
};

namespace detail {

struct AbelianDivision {
  SubgroupSet complement;
  std::vector<Element> generators;
};

// G/A Abelian: pick central representatives of a basis of G/A.
inline std::optional<AbelianDivision> divide_abelian_quotient(const GroupTable& g, const SubgroupSet& a,
                                                              const Quotient& q) {
  const auto z = center(g);
  AbelianDivision out{trivial_subgroup(g), {}};
  for (const auto& b : abelian_basis(q.table)) {
    Element rep = -1;
    for (Element x = 0; x < g.size(); ++x) {
      if (q.coset_of[static_cast<std::size_t>(x)] == b.element && z.contains(x) && g.order(x) == b.order) {
        rep = x;
        break;
      }
    }
    if (rep < 0) return std::nullopt;
    out.generators.push_back(rep);
  }
  out.complement = closure(g, out.generators);
  if (!is_internal_direct_product(g, a, out.complement)) return std::nullopt;
  return out;
}

inline void check_decomposition(const GroupTable& g, const Decomposition& d) {
  if (g.size() == 1) {
    if (!d.factors.empty()) throw std::logic_error("decompose: trivial group must have no factors");
    return;
  }
  ElementSet product = trivial_subgroup(g);
  long long total = 1;
  for (std::size_t i = 0; i < d.factors.size(); ++i) {
    const auto& f = d.factors[i];
    if (!is_subgroup(g, f) || !is_normal(g, f)) throw std::logic_error("decompose: factor is not a normal subgroup");
    if (closure(g, d.generators[i]) != f) throw std::logic_error("decompose: generators do not span factor");
    if ((product & f).count() != 1) throw std::logic_error("decompose: factors intersect");
    for (std::size_t j = 0; j < i; ++j) {
      const auto fj = d.factors[j].elements();
      f.for_each([&](Element x) {
        for (Element y : fj)
          if (g.mul(x, y) != g.mul(y, x)) throw std::logic_error("decompose: factors do not commute");
      });
    }
    total *= f.count();
    product = set_product(g, product, f);
  }
  if (total != g.size() || product.count() != g.size()) throw std::logic_error("decompose: product is not G");
}

inline int floor_log2(int n) {
  int t = 0;
  while ((2 << t) <= n) ++t;
  return t;
}

}  // namespace detail

/// B with G = A x B, or nullopt when A has no direct complement.
inline std::optional<SubgroupSet> group_division(const GroupTable& g, const SubgroupSet& a) {
  if (!is_subgroup(g, a) || !is_normal(g, a)) throw Error(ErrorCode::NotNormal, "group_division requires A normal in G");
  if (a.count() == g.size()) return trivial_subgroup(g);
  if (a.count() == 1) return ElementSet::full(g.size());

  const Quotient q = quotient(g, a);
  if (q.table.is_abelian()) {
    auto d = detail::divide_abelian_quotient(g, a, q);
    if (!d) return std::nullopt;
    return d->complement;
  }

  const auto t = commutator_subgroup(g, centralizer(g, a), ElementSet::full(g.size()));
  if (!is_normal(g, t) || (a & t).count() != 1) return std::nullopt;
  const Quotient gt = quotient(g, t);
  ElementSet at(gt.table.size());
  a.for_each([&](Element x) { at.insert(gt.coset_of[static_cast<std::size_t>(x)]); });
  const Quotient outer = quotient(gt.table, at);
  if (!outer.table.is_abelian()) return std::nullopt;
  auto d = detail::divide_abelian_quotient(gt.table, at, outer);
  if (!d) return std::nullopt;

  std::vector<Element> gens = t.elements();
  for (Element c : d->generators) gens.push_back(gt.representative[static_cast<std::size_t>(c)]);
  auto c = closure(g, gens);
  if (!is_internal_direct_product(g, a, c)) return std::nullopt;
  return c;
}

/// Splits off cyclic direct factors one at a time. A cyclic direct factor is
/// central, so only central b are tried, in increasing order, one per cyclic
/// subgroup.
inline SemiAbelian semi_abelian_decomposition(const GroupTable& g) {
  if (g.is_abelian()) {
    SemiAbelian out{trivial_subgroup(g), {}};
    for (const auto& b : abelian_basis(g)) out.bs.push_back(b.element);
    return out;
  }
  const auto z = center(g);
  std::vector<SubgroupSet> seen;
  for (Element b : z.elements()) {
    if (b == g.identity()) continue;
    auto cyc = closure(g, {b});
    if (std::find(seen.begin(), seen.end(), cyc) != seen.end()) continue;
    seen.push_back(cyc);
    auto comp = group_division(g, cyc);
    if (!comp) continue;
    const auto ig = induced_subgroup(g, *comp);
    const auto rest = semi_abelian_decomposition(ig.table);
    SemiAbelian out{ig.lift(rest.a), {b}};
    for (Element x : ig.lift(rest.bs)) out.bs.push_back(x);
    return out;
  }
  return {ElementSet::full(g.size()), {}};
}

/// Conjugacy-class graph on the irreducible noncentral classes.
inline ClassGraph class_graph(const GroupTable& g) {
  const auto cc = conjugacy_classes(g);
  std::vector<int> noncentral;
  for (std::size_t i = 0; i < cc.classes.size(); ++i)
    if (cc.classes[i].size() > 1) noncentral.push_back(static_cast<int>(i));
  const std::size_t m = noncentral.size();

  std::vector<std::vector<char>> commute(m, std::vector<char>(m, 1));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      bool ok = true;
      for (Element x : cc.classes[static_cast<std::size_t>(noncentral[i])]) {
        for (Element y : cc.classes[static_cast<std::size_t>(noncentral[j])])
          if (g.mul(x, y) != g.mul(y, x)) {
            ok = false;
            break;
          }
        if (!ok) break;
      }
      commute[i][j] = commute[j][i] = ok;
    }

  std::vector<char> reducible(cc.classes.size(), 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      if (!commute[i][j]) continue;
      const auto& ca = cc.classes[static_cast<std::size_t>(noncentral[i])];
      const auto& cb = cc.classes[static_cast<std::size_t>(noncentral[j])];
      const std::size_t size = ca.size() * cb.size();
      if (size > static_cast<std::size_t>(g.size())) continue;
      ElementSet prod(g.size());
      for (Element x : ca)
        for (Element y : cb) prod.insert(g.mul(x, y));
      if (static_cast<std::size_t>(prod.count()) != size) continue;
      const int target = cc.class_of[static_cast<std::size_t>(prod.elements().front())];
      if (cc.classes[static_cast<std::size_t>(target)].size() == size &&
          ElementSet::of(g.size(), cc.classes[static_cast<std::size_t>(target)]) == prod)
        reducible[static_cast<std::size_t>(target)] = 1;
    }

  ClassGraph cg;
  std::vector<std::size_t> vidx;  // vertex -> index into noncentral
  for (std::size_t i = 0; i < m; ++i)
    if (!reducible[static_cast<std::size_t>(noncentral[i])]) {
      vidx.push_back(i);
      cg.vertices.push_back(cc.classes[static_cast<std::size_t>(noncentral[i])]);
    }
  const std::size_t v = vidx.size();
  cg.adjacency.assign(v, {});
  std::vector<int> parent(v);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (std::size_t i = 0; i < v; ++i)
    for (std::size_t j = i + 1; j < v; ++j)
      if (!commute[vidx[i]][vidx[j]]) {
        cg.adjacency[i].push_back(static_cast<int>(j));
        cg.adjacency[j].push_back(static_cast<int>(i));
        parent[static_cast<std::size_t>(find(static_cast<int>(i)))] = find(static_cast<int>(j));
      }
  std::vector<int> comp_of(v, -1);
  for (std::size_t i = 0; i < v; ++i) {
    const int r = find(static_cast<int>(i));
    if (comp_of[static_cast<std::size_t>(r)] < 0) {
      comp_of[static_cast<std::size_t>(r)] = static_cast<int>(cg.components.size());
      cg.components.emplace_back();
    }
    cg.components[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(r)])].push_back(static_cast<int>(i));
  }
  if (static_cast<int>(cg.components.size()) > detail::floor_log2(g.size()))
    throw std::logic_error("class_graph: more components than log2 |G|");
  return cg;
}

namespace detail {

// Calls f on each k-subset of [0, t) in lexicographic order until f returns true.
template <class F>
bool for_each_subset(int t, int k, F&& f) {
  std::vector<int> s(static_cast<std::size_t>(k));
  std::iota(s.begin(), s.end(), 0);
  while (true) {
    if (f(s)) return true;
    int i = k - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == t - k + i) --i;
    if (i < 0) return false;
    ++s[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
  }
}

inline Decomposition decompose_unchecked(const GroupTable& g);

inline void append_lifted(Decomposition& out, const InducedGroup& ig, const Decomposition& part) {
  for (std::size_t i = 0; i < part.factors.size(); ++i) {
    out.factors.push_back(ig.lift(part.factors[i]));
    out.generators.push_back(ig.lift(part.generators[i]));
  }
}

inline Decomposition decompose_unchecked(const GroupTable& g) {
  const int n = g.size();
  Decomposition out;
  if (n == 1) return out;
  if (g.is_abelian()) {
    for (const auto& b : abelian_basis(g)) {
      out.factors.push_back(closure(g, {b.element}));
      out.generators.push_back({b.element});
    }
    return out;
  }

  const auto cg = class_graph(g);
  const int t = static_cast<int>(cg.components.size());
  if (t > 30) throw std::logic_error("decompose: too many class-graph components");

  auto try_subset = [&](const std::vector<int>& s1) {
    std::vector<char> in_s1(static_cast<std::size_t>(t), 0);
    for (int c : s1) in_s1[static_cast<std::size_t>(c)] = 1;
    std::vector<Element> others;
    for (int c = 0; c < t; ++c)
      if (!in_s1[static_cast<std::size_t>(c)])
        for (int vtx : cg.components[static_cast<std::size_t>(c)])
          for (Element x : cg.vertices[static_cast<std::size_t>(vtx)]) others.push_back(x);
    const auto x = closure(g, others);
    const auto z1 = centralizer(g, x);
    const auto iz = induced_subgroup(g, z1);
    const auto h1 = iz.lift(semi_abelian_decomposition(iz.table).a);
    if (h1.count() == 1 || h1.count() == n) return false;
    if (!is_normal(g, h1)) return false;
    const auto y1 = group_division(g, h1);
    if (!y1) return false;
    const auto ih = induced_subgroup(g, h1);
    const auto iy = induced_subgroup(g, *y1);
    append_lifted(out, ih, decompose_unchecked(ih.table));
    append_lifted(out, iy, decompose_unchecked(iy.table));
    return true;
  };

  bool found = false;
  for (int k = 1; k <= t && !found; ++k) found = for_each_subset(t, k, try_subset);
  if (!found) {
    out.factors.push_back(ElementSet::full(n));
    out.generators.push_back(greedy_generators(g, ElementSet::full(n)));
  }
  return out;
}

}  // namespace detail

/// Fully refined direct product decomposition. The result is checked before
/// it is returned.
inline Decomposition decompose(const GroupTable& g) {
  auto d = detail::decompose_unchecked(g);
  detail::check_decomposition(g, d);
  return d;
}

struct FactorInvariants {
  int abelianization_order;
  int center_order;
};

inline std::vector<FactorInvariants> factor_invariants(const GroupTable& g, const Decomposition& d) {
  std::vector<FactorInvariants> out;
  for (const auto& f : d.factors) {
    const auto ig = induced_subgroup(g, f);
    out.push_back({ig.table.size() / derived_subgroup(ig.table).count(), center(ig.table).count()});
  }
  return out;
}

/// Factor i is setwise canonical when |S_i/[S_i,S_i]| is coprime to |Z(S_j)|
/// for every other factor j.
inline bool factor_is_canonical(const GroupTable& g, const Decomposition& d, std::size_t i) {
  const auto inv = factor_invariants(g, d);
  for (std::size_t j = 0; j < inv.size(); ++j)
    if (j != i && std::gcd(inv[i].abelianization_order, inv[j].center_order) != 1) return false;
  return true;
}

inline bool decomposition_is_unique(const GroupTable& g, const Decomposition& d) {
  const auto inv = factor_invariants(g, d);
  for (std::size_t i = 0; i < inv.size(); ++i)
    for (std::size_t j = 0; j < inv.size(); ++j)
      if (i != j && std::gcd(inv[i].abelianization_order, inv[j].center_order) != 1) return false;
  return true;
}

/// Every indecomposable factor is at most d-generated and perfect or centerless.
inline bool in_class_C(const GroupTable& g, int d) {
  const auto dec = decompose(g);
  for (const auto& f : dec.factors) {
    const auto ig = induced_subgroup(g, f);
    if (!is_perfect(ig.table) && !is_centerless(ig.table)) return false;
    if (!is_d_generated(ig.table, d)) return false;
  }
  return true;
}

}  // namespace cayley
