#pragma once

#include <algorithm>
#include <vector>

#include "cayley/error.hpp"
#include "cayley/group_ops.hpp"
#include "cayley/table.hpp"

namespace cayley {

struct BasisElement {
  Element element;
  int order;  // a prime power
  int prime;
};

namespace detail {

inline std::vector<int> prime_factors(int n) {
  std::vector<int> ps;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

inline bool is_power_of(int m, int p) {
  while (m % p == 0) m /= p;
  return m == 1;
}

}  // namespace detail

/// Whether x splits from the Abelian p-group `sylow`: no y in it has
/// |x * y^p| < |x|.
inline bool splits_from(const GroupTable& a, const std::vector<Element>& sylow, int p, Element x) {
  for (Element y : sylow) {
    if (a.order(a.mul(x, a.pow(y, p))) < a.order(x)) return false;
  }
  return true;
}

/// Basis b_1..b_k with A = <b_1> x ... x <b_k>, each of prime-power order.
/// Sylow subgroups are handled in increasing prime order. Inside a Sylow
/// subgroup the next basis element is a splitting element, outside the
/// current span S, of maximal order among those with <x> & S = 1 (ties to the
/// smaller index). The order rule keeps S a direct summand at every step.
inline std::vector<BasisElement> abelian_basis(const GroupTable& a) {
  if (!a.is_abelian()) throw Error(ErrorCode::NotAbelian, "abelian_basis requires an Abelian group");
  std::vector<BasisElement> basis;
  for (int p : detail::prime_factors(a.size())) {
    std::vector<Element> sylow;
    for (Element x = 0; x < a.size(); ++x)
      if (detail::is_power_of(a.order(x), p)) sylow.push_back(x);

    std::vector<Element> ypow(sylow.size());
    for (std::size_t i = 0; i < sylow.size(); ++i) ypow[i] = a.pow(sylow[i], p);
    std::vector<char> splits(sylow.size(), 1);
    for (std::size_t i = 0; i < sylow.size(); ++i) {
      const Element x = sylow[i];
      for (Element yp : ypow)
        if (a.order(a.mul(x, yp)) < a.order(x)) {
          splits[i] = 0;
          break;
        }
    }

    ElementSet span(a.size());
    span.insert(a.identity());
    int span_size = 1;
    while (span_size < static_cast<int>(sylow.size())) {
      Element best = -1;
      for (std::size_t i = 0; i < sylow.size(); ++i) {
        const Element x = sylow[i];
        if (!splits[i] || span.contains(x)) continue;
        if (best >= 0 && a.order(x) <= a.order(best)) continue;
        // <x> meets the span nontrivially iff its unique order-p subgroup does.
        if (span.contains(a.pow(x, a.order(x) / p))) continue;
        best = x;
      }
      if (best < 0) throw Error(ErrorCode::InvalidTable, "abelian_basis: no independent splitting element");
      ElementSet cyc(a.size());
      for (Element y = a.identity(), k = 0; k < a.order(best); ++k, y = a.mul(y, best)) cyc.insert(y);
      span = set_product(a, span, cyc);
      const int expected = span_size * a.order(best);
      span_size = span.count();
      if (span_size != expected) throw Error(ErrorCode::InvalidTable, "abelian_basis: span is not direct");
      basis.push_back({best, a.order(best), p});
    }
  }
  return basis;
}

/// Orders of a basis sorted by (prime, order): the isomorphism type.
inline std::vector<int> abelian_invariants(const GroupTable& a) {
  auto b = abelian_basis(a);
  std::sort(b.begin(), b.end(), [](const BasisElement& x, const BasisElement& y) {
    return std::pair(x.prime, x.order) < std::pair(y.prime, y.order);
  });
  std::vector<int> out;
  for (const auto& e : b) out.push_back(e.order);
  return out;
}

/// Mixed-radix coordinates with respect to a basis: element(coords) =
/// sum_i coords_i * b_i, with coords_i in [0, order_i).
class AbelianCoordinates {
 public:
  AbelianCoordinates(const GroupTable& a, std::vector<BasisElement> basis) : basis_(std::move(basis)) {
    const int n = a.size();
    index_to_element_.assign(static_cast<std::size_t>(n), -1);
    element_to_index_.assign(static_cast<std::size_t>(n), -1);
    long long total = 1;
    for (const auto& b : basis_) total *= b.order;
    if (total != n) throw Error(ErrorCode::InvalidTable, "basis orders do not multiply to |A|");
    std::vector<int> digits(basis_.size(), 0);
    for (int idx = 0; idx < n; ++idx) {
      Element x = a.identity();
      for (std::size_t i = 0; i < basis_.size(); ++i) x = a.mul(x, a.pow(basis_[i].element, digits[i]));
      index_to_element_[static_cast<std::size_t>(idx)] = x;
      element_to_index_[static_cast<std::size_t>(x)] = idx;
      for (std::size_t i = basis_.size(); i-- > 0;) {
        if (++digits[i] < basis_[i].order) break;
        digits[i] = 0;
      }
    }
  }

  const std::vector<BasisElement>& basis() const noexcept { return basis_; }
  Element element(int index) const { return index_to_element_[static_cast<std::size_t>(index)]; }
  int index(Element x) const { return element_to_index_[static_cast<std::size_t>(x)]; }

  std::vector<int> coords(Element x) const {
    std::vector<int> c(basis_.size());
    int idx = index(x);
    for (std::size_t i = basis_.size(); i-- > 0;) {
      c[i] = idx % basis_[i].order;
      idx /= basis_[i].order;
    }
    return c;
  }
  int index_of(const std::vector<int>& c) const {
    int idx = 0;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const int m = basis_[i].order;
      idx = idx * m + ((c[i] % m) + m) % m;
    }
    return idx;
  }

 private:
  std::vector<BasisElement> basis_;
  std::vector<Element> index_to_element_;
  std::vector<int> element_to_index_;
};

}  // namespace cayley
