#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cayley/abelian.hpp"
#include "cayley/central.hpp"
#include "cayley/error.hpp"
#include "cayley/group_ops.hpp"
#include "cayley/perm.hpp"
#include "cayley/permgroup.hpp"
#include "cayley/table.hpp"

namespace cayley {

struct CatalogMetadata {
  int order = 0;
  bool abelian = false;
  bool perfect = false;
  bool centerless = false;
  std::vector<Element> generators;
};

struct CatalogEntry {
  std::string name;
  GroupTable table;
  CatalogMetadata metadata;
};

inline GroupTable cyclic_group(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidTable, "cyclic group order must be positive");
  return GroupTable::trusted(MulTable::from_function(n, [n](Element a, Element b) { return (a + b) % n; }));
}

/// Table of the group generated by permutations; elements are numbered in
/// breadth-first order from the identity, so the identity is 0.
inline GroupTable permutation_group_table(const PermGroup& g, std::size_t cap = 100'000) {
  const auto elems = enumerate_elements(g, cap);
  std::unordered_map<Perm, Element> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], static_cast<Element>(i));
  const int n = static_cast<int>(elems.size());
  return GroupTable::trusted(MulTable::from_function(n, [&](Element a, Element b) {
    return index.at(elems[static_cast<std::size_t>(a)] * elems[static_cast<std::size_t>(b)]);
  }));
}

inline GroupTable product_of(const std::vector<GroupTable>& parts) {
  GroupTable g = cyclic_group(1);
  for (const auto& p : parts) g = direct_product(g, p);
  return g;
}

inline GroupTable elementary_abelian(int p, int k) { return product_of(std::vector<GroupTable>(static_cast<std::size_t>(k), cyclic_group(p))); }

/// Dihedral group of order 2n.
inline GroupTable dihedral_group(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidTable, "dihedral degree must be positive");
  if (n == 1) return cyclic_group(2);
  if (n == 2) return elementary_abelian(2, 2);
  std::vector<int> rot(static_cast<std::size_t>(n)), refl(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rot[static_cast<std::size_t>(i)] = (i + 1) % n;
    refl[static_cast<std::size_t>(i)] = (n - i) % n;
  }
  return permutation_group_table(PermGroup(n, {Perm(rot), Perm(refl)}));
}

inline GroupTable symmetric_group(int m) {
  if (m <= 1) return cyclic_group(1);
  if (m == 2) return cyclic_group(2);
  std::vector<int> cyc(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) cyc[static_cast<std::size_t>(i)] = (i + 1) % m;
  return permutation_group_table(PermGroup(m, {Perm::from_cycles(m, {{0, 1}}), Perm(cyc)}));
}

inline GroupTable alternating_group(int m) {
  if (m <= 2) return cyclic_group(1);
  std::vector<Perm> gens;
  for (int i = 2; i < m; ++i) gens.push_back(Perm::from_cycles(m, {{0, 1, i}}));
  return permutation_group_table(PermGroup(m, gens));
}

/// Quaternion group: elements +-1, +-i, +-j, +-k at indices 0..7 in that order.
inline GroupTable quaternion_group() {
  // unit products: mul[a][b] = (sign, unit) for units 1, i, j, k
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  return GroupTable::trusted(MulTable::from_function(8, [](Element a, Element b) {
    const int ua = a / 2, ub = b / 2;
    int s = (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1) * sign[ua][ub];
    return unit[ua][ub] * 2 + (s < 0 ? 1 : 0);
  }));
}

namespace detail {

inline int parse_count(const std::string& s, std::size_t from, const std::string& whole) {
  if (from >= s.size() || !std::all_of(s.begin() + static_cast<std::ptrdiff_t>(from), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
    throw Error(ErrorCode::ParseError, "bad group name: " + whole);
  return std::stoi(s.substr(from));
}

inline GroupTable named_factor(const std::string& tok) {
  if (tok == "Q8") return quaternion_group();
  if (tok.empty()) throw Error(ErrorCode::ParseError, "empty group name");
  const auto caret = tok.find('^');
  if (tok[0] == 'Z') {
    if (caret != std::string::npos)
      return elementary_abelian(parse_count(tok.substr(0, caret), 1, tok), parse_count(tok, caret + 1, tok));
    return cyclic_group(parse_count(tok, 1, tok));
  }
  if (tok[0] == 'D') return dihedral_group(parse_count(tok, 1, tok));
  if (tok[0] == 'S') return symmetric_group(parse_count(tok, 1, tok));
  if (tok[0] == 'A') return alternating_group(parse_count(tok, 1, tok));
  throw Error(ErrorCode::ParseError, "unknown group name: " + tok);
}

inline std::vector<std::string> split_product(const std::string& name) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto x = name.find('x', start);
    parts.push_back(name.substr(start, x - start));
    if (x == std::string::npos) break;
    start = x + 1;
  }
  return parts;
}

}  // namespace detail

/// Group from a name such as "Z12", "Z2^3", "D5" (order 10), "S4", "A5",
/// "Q8", or a product "S3xZ4xA4".
inline GroupTable group_by_name(const std::string& name) {
  std::vector<GroupTable> parts;
  for (const auto& tok : detail::split_product(name)) parts.push_back(detail::named_factor(tok));
  return parts.size() == 1 ? parts.front() : product_of(parts);
}

inline CatalogEntry make_entry(std::string name, GroupTable g) {
  CatalogMetadata m;
  m.order = g.size();
  m.abelian = g.is_abelian();
  m.perfect = is_perfect(g);
  m.centerless = is_centerless(g);
  m.generators = greedy_generators(g, ElementSet::full(g.size()));
  return {std::move(name), std::move(g), std::move(m)};
}

struct CatalogSpec {
  std::string name;
  int order;
  std::vector<std::string> factors;
};

/// Names and orders of the base groups.
inline std::vector<CatalogSpec> base_catalog_specs() {
  std::vector<CatalogSpec> out;
  auto add = [&](std::string name, int order) { out.push_back({name, order, {name}}); };
  for (int n = 1; n <= 64; ++n) add("Z" + std::to_string(n), n);
  for (int k = 2; k <= 5; ++k) add("Z2^" + std::to_string(k), 1 << k);
  add("Z3^2", 9);
  add("Z3^3", 27);
  add("Z5^2", 25);
  add("Z4xZ2", 8);
  for (int n = 3; n <= 20; ++n) add("D" + std::to_string(n), 2 * n);
  add("S3", 6);
  add("S4", 24);
  add("A4", 12);
  add("A5", 60);
  add("Q8", 8);
  return out;
}

/// Base groups plus every product of two or three nontrivial base groups
/// (as multisets in base order) of order at most `max_order`.
inline std::vector<CatalogSpec> catalog_specs(int max_order = 400) {
  auto base = base_catalog_specs();
  std::vector<CatalogSpec> out = base;
  const std::size_t b = base.size();
  for (std::size_t i = 1; i < b; ++i)
    for (std::size_t j = i; j < b; ++j) {
      const int o2 = base[i].order * base[j].order;
      if (o2 > max_order) continue;
      out.push_back({base[i].name + "x" + base[j].name, o2, {base[i].name, base[j].name}});
      for (std::size_t k = j; k < b; ++k) {
        const int o3 = o2 * base[k].order;
        if (o3 <= max_order) out.push_back({base[i].name + "x" + base[j].name + "x" + base[k].name, o3, {base[i].name, base[j].name, base[k].name}});
      }
    }
  return out;
}

inline CatalogEntry catalog_entry(const CatalogSpec& spec) { return make_entry(spec.name, group_by_name(spec.name)); }

/// The base groups, built.
inline std::vector<CatalogEntry> catalog() {
  std::vector<CatalogEntry> out;
  for (const auto& s : base_catalog_specs()) out.push_back(catalog_entry(s));
  return out;
}

/// Multiplication by k on a cyclic group, or by k on every coordinate.
inline Perm scalar_automorphism(const GroupTable& plus, int k) {
  std::vector<int> img(static_cast<std::size_t>(plus.size()));
  for (Element x = 0; x < plus.size(); ++x) img[static_cast<std::size_t>(x)] = plus.pow(x, k);
  return Perm(std::move(img));
}

inline QuasigroupTable gen_central(const std::string& plus_spec, const Perm& phi, const Perm& psi, Element c) {
  return build_central(group_by_name(plus_spec), phi, psi, c);
}

/// Isomorphism types of Abelian groups of order n, as lists of cyclic
/// prime-power orders.
inline std::vector<std::vector<int>> abelian_types(int n) {
  std::vector<std::vector<int>> types{{}};
  for (int p : detail::prime_factors(n)) {
    int e = 0;
    for (int m = n; m % p == 0; m /= p) ++e;
    std::vector<std::vector<int>> parts;
    std::function<void(int, int, std::vector<int>&)> rec = [&](int left, int maxpart, std::vector<int>& cur) {
      if (left == 0) {
        parts.push_back(cur);
        return;
      }
      for (int k = std::min(left, maxpart); k >= 1; --k) {
        cur.push_back(k);
        rec(left - k, k, cur);
        cur.pop_back();
      }
    };
    std::vector<int> cur;
    rec(e, e, cur);
    std::vector<std::vector<int>> next;
    for (const auto& t : types)
      for (const auto& part : parts) {
        auto u = t;
        for (int k : part) {
          int q = 1;
          for (int i = 0; i < k; ++i) q *= p;
          u.push_back(q);
        }
        next.push_back(std::move(u));
      }
    types = std::move(next);
  }
  return types;
}

inline std::string abelian_type_name(const std::vector<int>& type) {
  if (type.empty()) return "Z1";
  std::string s;
  for (std::size_t i = 0; i < type.size(); ++i) s += (i ? "xZ" : "Z") + std::to_string(type[i]);
  return s;
}

struct CentralSpec {
  std::string plus_name;
  const GroupTable* plus;
  const Perm* phi;
  const Perm* psi;
  Element c;
};

/// Visits every (Abelian group of order <= bound, phi, psi, c) with phi and
/// psi ranging over Aut. Stops early when `visit` returns false.
inline void for_each_central_form(int bound, const std::function<bool(const CentralSpec&)>& visit,
                                  std::size_t aut_cap = 1'000'000) {
  for (int n = 1; n <= bound; ++n)
    for (const auto& type : abelian_types(n)) {
      const std::string name = abelian_type_name(type);
      const GroupTable plus = group_by_name(name);
      const auto auts = enumerate_elements(aut_abelian_generators(plus), aut_cap);
      for (const auto& phi : auts)
        for (const auto& psi : auts)
          for (Element c = 0; c < n; ++c)
            if (!visit({name, &plus, &phi, &psi, c})) return;
    }
}

}  // namespace cayley
