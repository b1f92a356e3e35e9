#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "cayley/decomposition.hpp"
#include "cayley/error.hpp"
#include "cayley/generation.hpp"
#include "cayley/perm.hpp"
#include "cayley/wl.hpp"

namespace cayley {

struct CanonicalLabeling {
  Perm labels;                            // element -> canonical index
  GroupTable canonical_table;             // relabel(G, labels)
  std::vector<Element> generating_tuple;  // in G's indices
  std::vector<int> factor_orders;         // in canonical factor order
};

struct MinimalTuple {
  std::vector<int> form;
  std::vector<Element> tuple;
};

/// Generating tuple of minimal length whose marked form is least.
inline std::optional<MinimalTuple> minimal_generating_tuple(const GroupTable& g, int d) {
  const auto first = is_d_generated(g, d);
  if (!first) return std::nullopt;
  MinimalTuple best{marked_form(g, *first), *first};
  MarkedFormBuilder mf(g);
  for_each_generating_tuple(g, static_cast<int>(first->size()), [&](const std::vector<Element>& t) {
    const auto& f = mf.form(t);
    if (f < best.form) best = {f, t};
    return true;
  });
  return best;
}

namespace detail {

// Labels elements by their breadth-first word order over a generating tuple.
inline CanonicalLabeling label_by_words(const GroupTable& g, std::vector<Element> tuple, std::vector<int> factor_orders) {
  MarkedFormBuilder mf(g);
  mf.form(tuple);
  const auto& order = mf.order();
  if (static_cast<int>(order.size()) != g.size()) throw std::logic_error("canonization: tuple does not generate G");
  std::vector<int> images(static_cast<std::size_t>(g.size()));
  for (std::size_t i = 0; i < order.size(); ++i) images[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  Perm labels(std::move(images));
  auto table = relabel(g, labels);
  return {std::move(labels), std::move(table), std::move(tuple), std::move(factor_orders)};
}

}  // namespace detail

/// Canonical labeling of an at most d-generated group.
inline CanonicalLabeling canonize_bounded_gen(const GroupTable& g, int d) {
  auto best = minimal_generating_tuple(g, d);
  if (!best) throw Error(ErrorCode::NotDGenerated, "group is not " + std::to_string(d) + "-generated");
  return detail::label_by_words(g, std::move(best->tuple), {g.size()});
}

/// Canonical labeling of a group whose indecomposable factors are at most
/// d-generated: factors are ordered by the least marked form of their
/// generating tuples and the concatenated tuple labels G.
inline CanonicalLabeling canonize_direct_product(const GroupTable& g, int d) {
  const auto dec = decompose(g);
  struct Keyed {
    std::vector<int> form;
    int order;
    std::vector<Element> tuple;
  };
  std::vector<Keyed> keyed;
  for (const auto& f : dec.factors) {
    const auto ig = induced_subgroup(g, f);
    auto best = minimal_generating_tuple(ig.table, d);
    if (!best) throw Error(ErrorCode::FactorNotDGenerated, "a factor of order " + std::to_string(ig.table.size()) + " is not " + std::to_string(d) + "-generated");
    keyed.push_back({std::move(best->form), ig.table.size(), ig.lift(best->tuple)});
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.form, a.order) < std::tie(b.form, b.order);
  });
  std::vector<Element> tuple;
  std::vector<int> orders;
  for (const auto& k : keyed) {
    orders.push_back(k.order);
    for (Element x : k.tuple)
      if (x != g.identity()) tuple.push_back(x);
  }
  return detail::label_by_words(g, std::move(tuple), std::move(orders));
}

}  // namespace cayley
