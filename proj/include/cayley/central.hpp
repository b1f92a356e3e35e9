#pragma once

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "cayley/abelian.hpp"
#include "cayley/error.hpp"
#include "cayley/group_ops.hpp"
#include "cayley/perm.hpp"
#include "cayley/permgroup.hpp"
#include "cayley/table.hpp"
#include "cayley/wl.hpp"

namespace cayley {

/// x * y = phi(x) + psi(y) + c over the Abelian group `plus`.
struct CentralForm {
  GroupTable plus;
  Perm phi;
  Perm psi;
  Element c = 0;
};

/// gamma: plus_1 -> plus_2 with gamma phi_1 gamma^-1 = phi_2,
/// gamma psi_1 gamma^-1 = psi_2 and gamma(c_1 + u) = c_2.
struct IsoCertificate {
  Perm gamma;
  Element u = 0;
};

/// (Q, .) with x . y = (x * (e \ (y * e))) / e, and the isotopism
/// x * beta(y) = gamma(x . y) with alpha = id.
struct DisGroup {
  GroupTable group;
  Perm alpha;
  Perm beta;
  Perm gamma;
};

inline std::optional<DisGroup> dis_group(const QuasigroupTable& q, Element e) {
  const int n = q.size();
  auto d = [&](Element x, Element w) { return q(x, q.ldiv(e, w)); };
  const Element ee = q(e, e);
  std::vector<Element> prod(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      const Element z = q.rdiv(d(x, d(y, ee)), e);
      for (Element w = 0; w < n; ++w)
        if (d(x, d(y, w)) != d(z, w)) return std::nullopt;
      prod[static_cast<std::size_t>(x) * static_cast<std::size_t>(n) + static_cast<std::size_t>(y)] = z;
    }
  std::vector<int> beta(static_cast<std::size_t>(n)), gamma(static_cast<std::size_t>(n));
  for (Element y = 0; y < n; ++y) {
    beta[static_cast<std::size_t>(y)] = q.ldiv(e, q(y, e));
    gamma[static_cast<std::size_t>(y)] = q(y, e);
  }
  return DisGroup{GroupTable::trusted(MulTable(n, std::move(prod))), Perm::identity(n), Perm(std::move(beta)), Perm(std::move(gamma))};
}

inline bool is_automorphism(const GroupTable& a, const Perm& f) {
  if (f.degree() != a.size()) return false;
  for (Element x = 0; x < a.size(); ++x)
    for (Element y = 0; y < a.size(); ++y)
      if (f(a.mul(x, y)) != a.mul(f(x), f(y))) return false;
  return true;
}

inline QuasigroupTable build_central(const GroupTable& plus, const Perm& phi, const Perm& psi, Element c) {
  if (!plus.is_abelian()) throw Error(ErrorCode::NotAbelian, "build_central requires an Abelian group");
  if (!is_automorphism(plus, phi)) throw Error(ErrorCode::NotAutomorphism, "phi is not an automorphism");
  if (!is_automorphism(plus, psi)) throw Error(ErrorCode::NotAutomorphism, "psi is not an automorphism");
  if (c < 0 || c >= plus.size()) throw Error(ErrorCode::InvalidTable, "c out of range");
  return validate_quasigroup(MulTable::from_function(plus.size(), [&](Element x, Element y) {
    return plus.mul(plus.mul(phi(x), psi(y)), c);
  }));
}

/// Central form of q read off at e = 0, or nullopt when q is not central.
inline std::optional<CentralForm> recognize_central(const QuasigroupTable& q) {
  auto dis = dis_group(q, 0);
  if (!dis || !dis->group.is_abelian()) return std::nullopt;
  const GroupTable& p = dis->group;
  if (p.identity() != 0) throw std::logic_error("recognize_central: displacement group identity is not 0");
  const int n = q.size();
  const Element c = q(0, 0);
  const Element minus_c = p.inv(c);
  std::vector<int> phi(static_cast<std::size_t>(n)), psi(static_cast<std::size_t>(n));
  for (Element x = 0; x < n; ++x) {
    phi[static_cast<std::size_t>(x)] = p.mul(q(x, 0), minus_c);
    psi[static_cast<std::size_t>(x)] = p.mul(q(0, x), minus_c);
  }
  CentralForm f{p, Perm(std::move(phi)), Perm(std::move(psi)), c};
  if (!is_automorphism(p, f.phi) || !is_automorphism(p, f.psi)) return std::nullopt;
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      if (q(x, y) != p.mul(p.mul(f.phi(x), f.psi(y)), c)) return std::nullopt;
  return f;
}

inline bool is_medial(const QuasigroupTable& q) {
  const int n = q.size();
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element u = 0; u < n; ++u)
        for (Element v = 0; v < n; ++v)
          if (q(q(x, y), q(u, v)) != q(q(x, u), q(y, v))) return false;
  return true;
}

namespace detail {

// Generators of (Z/m)^*, by greedy closure.
inline std::vector<int> unit_generators(int m) {
  std::vector<int> gens;
  std::vector<char> in(static_cast<std::size_t>(m), 0);
  if (m <= 2) return gens;
  in[1] = 1;
  for (int u = 2; u < m; ++u) {
    if (std::gcd(u, m) != 1 || in[static_cast<std::size_t>(u)]) continue;
    gens.push_back(u);
    std::vector<int> members;
    for (int x = 1; x < m; ++x)
      if (in[static_cast<std::size_t>(x)]) members.push_back(x);
    for (std::size_t i = 0; i < members.size(); ++i)
      for (int g : gens) {
        const int y = static_cast<int>(static_cast<long long>(members[i]) * g % m);
        if (!in[static_cast<std::size_t>(y)]) {
          in[static_cast<std::size_t>(y)] = 1;
          members.push_back(y);
        }
      }
  }
  return gens;
}

// Automorphism determined by the images of the basis elements.
inline Perm from_basis_images(const GroupTable& a, const AbelianCoordinates& coords, const std::vector<Element>& images) {
  std::vector<int> out(static_cast<std::size_t>(a.size()));
  for (Element x = 0; x < a.size(); ++x) {
    const auto c = coords.coords(x);
    Element y = a.identity();
    for (std::size_t i = 0; i < c.size(); ++i) y = a.mul(y, a.pow(images[i], c[i]));
    out[static_cast<std::size_t>(x)] = y;
  }
  return Perm(std::move(out));
}

}  // namespace detail

/// Generators of Aut(A): on each Sylow component with basis orders p^e_i,
/// unit scalings of one coordinate, swaps of equal-order basis elements, and
/// transvections b_i -> b_i + p^max(0, e_j - e_i) b_j.
inline PermGroup aut_abelian_generators(const GroupTable& a) {
  if (!a.is_abelian()) throw Error(ErrorCode::NotAbelian, "aut_abelian_generators requires an Abelian group");
  const auto basis = abelian_basis(a);
  const AbelianCoordinates coords(a, basis);
  std::vector<Element> base_images;
  for (const auto& b : basis) base_images.push_back(b.element);
  std::vector<Perm> gens;
  const std::size_t k = basis.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (int u : detail::unit_generators(basis[i].order)) {
      auto img = base_images;
      img[i] = a.pow(basis[i].element, u);
      gens.push_back(detail::from_basis_images(a, coords, img));
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j || basis[i].prime != basis[j].prime) continue;
      if (j > i && basis[i].order == basis[j].order) {
        auto img = base_images;
        std::swap(img[i], img[j]);
        gens.push_back(detail::from_basis_images(a, coords, img));
      }
      auto img = base_images;
      const int mult = std::max(1, basis[j].order / basis[i].order);
      img[i] = a.mul(basis[i].element, a.pow(basis[j].element, mult));
      gens.push_back(detail::from_basis_images(a, coords, img));
    }
  }
  return PermGroup(a.size(), std::move(gens));
}

/// Im(1 - phi - psi) = { x - phi(x) - psi(x) }.
inline SubgroupSet image_one_minus(const Perm& phi, const Perm& psi, const GroupTable& plus) {
  ElementSet out(plus.size());
  for (Element x = 0; x < plus.size(); ++x) out.insert(plus.mul(x, plus.inv(plus.mul(phi(x), psi(x)))));
  if (!is_subgroup(plus, out)) throw std::logic_error("image_one_minus: image is not a subgroup");
  return out;
}

enum class CentralIsoStatus { Isomorphic, NotIsomorphic, NotCentral };

inline std::string to_string(CentralIsoStatus s) {
  switch (s) {
    case CentralIsoStatus::Isomorphic: return "isomorphic";
    case CentralIsoStatus::NotIsomorphic: return "not isomorphic";
    case CentralIsoStatus::NotCentral: return "not central";
  }
  return "unknown";
}

struct CentralIsoResult {
  CentralIsoStatus status = CentralIsoStatus::NotIsomorphic;
  std::optional<IsoCertificate> certificate;
  std::optional<Perm> isomorphism;  // Q1 -> Q2
  std::size_t states_explored = 0;
};

namespace detail {

inline std::vector<BasisElement> sorted_basis(const GroupTable& a) {
  auto b = abelian_basis(a);
  std::stable_sort(b.begin(), b.end(), [](const BasisElement& x, const BasisElement& y) {
    return std::pair(x.prime, x.order) < std::pair(y.prime, y.order);
  });
  return b;
}

// Q2's form transported onto Q1's group along matching coordinates.
struct AlignedForms {
  CentralForm f1;
  Perm phi2;
  Perm psi2;
  Element c2 = 0;
  Perm tau;  // plus_2 -> plus_1
};

inline std::optional<AlignedForms> align_forms(const CentralForm& f1, const CentralForm& f2) {
  const auto b1 = sorted_basis(f1.plus);
  const auto b2 = sorted_basis(f2.plus);
  if (b1.size() != b2.size()) return std::nullopt;
  for (std::size_t i = 0; i < b1.size(); ++i)
    if (b1[i].order != b2[i].order) return std::nullopt;
  const AbelianCoordinates c1(f1.plus, b1), c2(f2.plus, b2);
  const int n = f1.plus.size();
  std::vector<int> tau(static_cast<std::size_t>(n));
  for (Element x = 0; x < n; ++x) tau[static_cast<std::size_t>(x)] = c1.element(c2.index(x));
  AlignedForms a{f1, Perm::identity(n), Perm::identity(n), 0, Perm(std::move(tau))};
  const Perm tinv = a.tau.inverse();
  a.phi2 = tinv * f2.phi * a.tau;
  a.psi2 = tinv * f2.psi * a.tau;
  a.c2 = a.tau(f2.c);
  return a;
}

inline Element coset_min(const GroupTable& plus, const Perm& phi, const Perm& psi, Element c) {
  Element best = plus.size();
  image_one_minus(phi, psi, plus).for_each([&](Element m) { best = std::min(best, plus.mul(c, m)); });
  return best;
}

inline std::vector<int> state_key(const Perm& phi, const Perm& psi, Element cmin) {
  std::vector<int> key(phi.images().begin(), phi.images().end());
  key.insert(key.end(), psi.images().begin(), psi.images().end());
  key.push_back(cmin);
  return key;
}

// Builds certificate and isomorphism from gamma in Aut(plus_1) meeting the
// conjugacy and coset conditions, and checks them against both tables.
inline CentralIsoResult certify(const QuasigroupTable& q1, const QuasigroupTable& q2, const AlignedForms& a, const Perm& gamma) {
  const GroupTable& p = a.f1.plus;
  const int n = p.size();
  const Element u = p.mul(gamma.inverse()(a.c2), p.inv(a.f1.c));
  Element s = -1;
  for (Element x = 0; x < n && s < 0; ++x)
    if (p.mul(x, p.inv(p.mul(a.f1.phi(x), a.f1.psi(x)))) == u) s = x;
  if (s < 0) throw std::logic_error("central_iso: u is not in Im(1 - phi - psi)");
  const Perm big_gamma = gamma * a.tau.inverse();
  std::vector<int> f(static_cast<std::size_t>(n));
  for (Element x = 0; x < n; ++x) f[static_cast<std::size_t>(x)] = big_gamma(p.mul(x, s));
  Perm iso(std::move(f));
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      if (iso(q1(x, y)) != q2(iso(x), iso(y))) throw std::logic_error("central_iso: certificate fails table check");
  CentralIsoResult r;
  r.status = CentralIsoStatus::Isomorphic;
  r.certificate = IsoCertificate{big_gamma, u};
  r.isomorphism = std::move(iso);
  return r;
}

}  // namespace detail

/// Isomorphism test for a central q1 against any quasigroup q2: breadth-first
/// orbit of (phi, psi, c + Im(1 - phi - psi)) under Aut(plus) until the
/// transported form of q2 is reached.
inline CentralIsoResult central_iso(const QuasigroupTable& q1, const QuasigroupTable& q2, std::size_t state_cap = 1'000'000) {
  const auto f1 = recognize_central(q1);
  if (!f1) throw Error(ErrorCode::NotCentral, "first quasigroup is not central");
  CentralIsoResult r;
  if (q1.size() != q2.size()) return r;
  const auto f2 = recognize_central(q2);
  if (!f2) {
    r.status = CentralIsoStatus::NotCentral;
    return r;
  }
  const auto a = detail::align_forms(*f1, *f2);
  if (!a) return r;
  const GroupTable& p = f1->plus;

  struct State {
    Perm phi, psi;
    Element c;
    Perm gamma;
  };
  const auto target = detail::state_key(a->phi2, a->psi2, detail::coset_min(p, a->phi2, a->psi2, a->c2));
  std::unordered_map<std::vector<int>, std::size_t, detail::VecHash> seen;
  std::vector<State> states;
  states.push_back({f1->phi, f1->psi, f1->c, Perm::identity(p.size())});
  seen.emplace(detail::state_key(f1->phi, f1->psi, detail::coset_min(p, f1->phi, f1->psi, f1->c)), 0);
  if (seen.count(target)) {
    auto out = detail::certify(q1, q2, *a, states[0].gamma);
    out.states_explored = 1;
    return out;
  }
  const auto gens = aut_abelian_generators(p).generators();
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (const auto& g : gens) {
      const State& s = states[i];
      const Perm ginv = g.inverse();
      State next{ginv * s.phi * g, ginv * s.psi * g, g(s.c), s.gamma * g};
      auto key = detail::state_key(next.phi, next.psi, detail::coset_min(p, next.phi, next.psi, next.c));
      if (seen.count(key)) continue;
      const bool hit = key == target;
      seen.emplace(std::move(key), states.size());
      states.push_back(std::move(next));
      if (hit) {
        auto out = detail::certify(q1, q2, *a, states.back().gamma);
        out.states_explored = states.size();
        return out;
      }
      if (states.size() > state_cap) throw Error(ErrorCode::BudgetExceeded, "central_iso: orbit exceeds state cap");
    }
  }
  r.states_explored = states.size();
  return r;
}

/// Same decision by enumerating Aut(plus) outright.
inline CentralIsoResult central_iso_by_enumeration(const QuasigroupTable& q1, const QuasigroupTable& q2, std::size_t aut_cap = 1'000'000) {
  const auto f1 = recognize_central(q1);
  if (!f1) throw Error(ErrorCode::NotCentral, "first quasigroup is not central");
  CentralIsoResult r;
  if (q1.size() != q2.size()) return r;
  const auto f2 = recognize_central(q2);
  if (!f2) {
    r.status = CentralIsoStatus::NotCentral;
    return r;
  }
  const auto a = detail::align_forms(*f1, *f2);
  if (!a) return r;
  const GroupTable& p = f1->plus;
  const auto im1 = image_one_minus(f1->phi, f1->psi, p);
  const auto auts = enumerate_elements(aut_abelian_generators(p), aut_cap);
  for (const auto& g : auts) {
    const Perm ginv = g.inverse();
    if (ginv * f1->phi * g != a->phi2 || ginv * f1->psi * g != a->psi2) continue;
    if (!im1.contains(p.mul(ginv(a->c2), p.inv(f1->c)))) continue;
    auto out = detail::certify(q1, q2, *a, g);
    out.states_explored = auts.size();
    return out;
  }
  r.states_explored = auts.size();
  return r;
}

}  // namespace cayley
