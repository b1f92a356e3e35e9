#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "cayley/error.hpp"
#include "cayley/perm.hpp"

namespace cayley {

/// A permutation group on [0, degree) given by generators. An empty
/// generator list stands for the trivial group.
class PermGroup {
 public:
  PermGroup() = default;
  explicit PermGroup(int degree, std::vector<Perm> gens = {}) : degree_(degree), gens_(std::move(gens)) {
    for (const auto& g : gens_)
      if (g.degree() != degree_) throw Error(ErrorCode::InvalidTable, "generator degree mismatch");
    if (gens_.empty()) gens_.push_back(Perm::identity(degree_));
  }

  int degree() const noexcept { return degree_; }
  const std::vector<Perm>& generators() const noexcept { return gens_; }

 private:
  int degree_ = 0;
  std::vector<Perm> gens_;
};

struct OrbitTransversal {
  std::vector<int> orbit;                    // discovery order, orbit[0] = x
  std::vector<std::optional<Perm>> witness;  // witness[y]: x^w = y, for y in orbit
  bool contains(int y) const { return witness[static_cast<std::size_t>(y)].has_value(); }
};

/// Orbit of x with a witness for every orbit point.
inline OrbitTransversal orbit_transversal(const PermGroup& g, int x) {
  OrbitTransversal ot;
  ot.witness.resize(static_cast<std::size_t>(g.degree()));
  ot.witness[static_cast<std::size_t>(x)] = Perm::identity(g.degree());
  ot.orbit.push_back(x);
  for (std::size_t i = 0; i < ot.orbit.size(); ++i) {
    const int p = ot.orbit[i];
    for (const auto& s : g.generators()) {
      const int q = s(p);
      if (!ot.witness[static_cast<std::size_t>(q)]) {
        ot.witness[static_cast<std::size_t>(q)] = *ot.witness[static_cast<std::size_t>(p)] * s;
        ot.orbit.push_back(q);
      }
    }
  }
  return ot;
}

/// Base and strong generating set. Level i has base point base[i], the
/// strong generators fixing base[0..i-1], and a transversal for the orbit of
/// base[i] under them.
class StabChain {
 public:
  struct Level {
    int base_point = -1;
    std::vector<Perm> generators;
    std::vector<std::optional<Perm>> transversal;  // indexed by point
    std::vector<int> orbit;
  };

  int degree() const noexcept { return degree_; }
  const std::vector<Level>& levels() const noexcept { return levels_; }
  std::vector<int> base() const {
    std::vector<int> b;
    for (const auto& l : levels_) b.push_back(l.base_point);
    return b;
  }

  /// Product of the orbit lengths.
  std::uint64_t order() const noexcept {
    std::uint64_t o = 1;
    for (const auto& l : levels_) o *= l.orbit.size();
    return o;
  }

  /// Sifts g through the chain starting at `from`. Returns the residue and
  /// the level at which sifting stopped (levels().size() when it passed all).
  std::pair<Perm, std::size_t> strip(Perm g, std::size_t from = 0) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      const int p = g(levels_[i].base_point);
      const auto& u = levels_[i].transversal[static_cast<std::size_t>(p)];
      if (!u) return {std::move(g), i};
      g = g * u->inverse();
    }
    return {std::move(g), levels_.size()};
  }

  bool contains(const Perm& g) const {
    auto [h, lvl] = strip(g);
    return lvl == levels_.size() && h.is_identity();
  }

  /// Generators of the pointwise stabilizer of base[0..i-1].
  PermGroup subgroup_at(std::size_t i) const {
    if (i >= levels_.size()) return PermGroup(degree_);
    return PermGroup(degree_, levels_[i].generators);
  }

 private:
  friend StabChain schreier_sims(const PermGroup& g, std::span<const int> base_prefix);

  void rebuild_orbit(std::size_t i) {
    auto& l = levels_[i];
    l.transversal.assign(static_cast<std::size_t>(degree_), std::nullopt);
    l.orbit.clear();
    l.transversal[static_cast<std::size_t>(l.base_point)] = Perm::identity(degree_);
    l.orbit.push_back(l.base_point);
    for (std::size_t k = 0; k < l.orbit.size(); ++k) {
      const int p = l.orbit[k];
      for (const auto& s : l.generators) {
        const int q = s(p);
        if (!l.transversal[static_cast<std::size_t>(q)]) {
          l.transversal[static_cast<std::size_t>(q)] = *l.transversal[static_cast<std::size_t>(p)] * s;
          l.orbit.push_back(q);
        }
      }
    }
  }

  int degree_ = 0;
  std::vector<Level> levels_;
};

/// Deterministic Schreier-Sims. `base_prefix` fixes the first base points;
/// further points are the first point moved by the generator that needs
/// them. Schreier generators are processed level by level, top down.
inline StabChain schreier_sims(const PermGroup& g, std::span<const int> base_prefix) {
  StabChain chain;
  chain.degree_ = g.degree();
  std::vector<Perm> gens;
  for (const auto& s : g.generators())
    if (!s.is_identity()) gens.push_back(s);

  auto& levels = chain.levels_;
  for (int b : base_prefix) {
    StabChain::Level l;
    l.base_point = b;
    levels.push_back(std::move(l));
  }
  auto fixes_base = [&](const Perm& s) {
    for (const auto& l : levels)
      if (s(l.base_point) != l.base_point) return false;
    return true;
  };
  for (const auto& s : gens) {
    if (fixes_base(s)) {
      StabChain::Level l;
      l.base_point = s.first_moved();
      levels.push_back(std::move(l));
    }
  }
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (const auto& s : gens) {
      bool fixes = true;
      for (std::size_t j = 0; j < i && fixes; ++j) fixes = s(levels[j].base_point) == levels[j].base_point;
      if (fixes) levels[i].generators.push_back(s);
    }
    chain.rebuild_orbit(i);
  }

  std::size_t i = levels.size();
  while (i > 0) {
    const std::size_t lvl = i - 1;
    bool restarted = false;
    for (std::size_t oi = 0; oi < levels[lvl].orbit.size() && !restarted; ++oi) {
      const int p = levels[lvl].orbit[oi];
      for (std::size_t gi = 0; gi < levels[lvl].generators.size() && !restarted; ++gi) {
        const Perm& x = levels[lvl].generators[gi];
        const Perm& up = *levels[lvl].transversal[static_cast<std::size_t>(p)];
        const Perm& upx = *levels[lvl].transversal[static_cast<std::size_t>(x(p))];
        Perm schreier = up * x * upx.inverse();
        if (schreier.is_identity()) continue;
        auto [h, j] = chain.strip(std::move(schreier), lvl + 1);
        if (h.is_identity()) continue;
        if (j == levels.size()) {
          StabChain::Level l;
          l.base_point = h.first_moved();
          levels.push_back(std::move(l));
        }
        for (std::size_t l = lvl + 1; l <= j; ++l) {
          levels[l].generators.push_back(h);
          chain.rebuild_orbit(l);
        }
        i = j + 1;
        restarted = true;
      }
    }
    if (!restarted) --i;
  }
  return chain;
}

inline StabChain schreier_sims(const PermGroup& g) { return schreier_sims(g, std::span<const int>{}); }

inline std::uint64_t group_order(const StabChain& chain) { return chain.order(); }

/// Generators of the subgroup fixing every listed point.
inline PermGroup pointwise_stabilizer(const PermGroup& g, std::span<const int> points) {
  auto chain = schreier_sims(g, points);
  return chain.subgroup_at(points.size());
}

struct TransporterCoset {
  Perm witness;            // xs_i^witness = ys_i
  PermGroup stabilizer;    // pointwise stabilizer of xs; coset = stabilizer * witness
};

/// Element mapping xs_i to ys_i for every i, with the stabilizer of xs so the
/// whole coset can be enumerated. Recursion: move x_1 to y_1 by an orbit
/// witness, then solve in Stab(x_1) for the translated targets. One
/// stabilizer chain per point, so cost grows with |xs| times the chain cost;
/// no bound on |xs| is imposed.
inline std::optional<TransporterCoset> pointwise_transporter_coset(const PermGroup& g, std::span<const int> xs,
                                                                   std::span<const int> ys) {
  if (xs.size() != ys.size()) throw Error(ErrorCode::InvalidTable, "transporter: sequence lengths differ");
  if (xs.empty()) return TransporterCoset{Perm::identity(g.degree()), g};
  const auto ot = orbit_transversal(g, xs[0]);
  if (!ot.contains(ys[0])) return std::nullopt;
  const Perm& w = *ot.witness[static_cast<std::size_t>(ys[0])];
  const Perm winv = w.inverse();
  const int first = xs[0];
  PermGroup stab = pointwise_stabilizer(g, std::span<const int>(&first, 1));
  std::vector<int> targets;
  for (std::size_t i = 1; i < ys.size(); ++i) targets.push_back(winv(ys[i]));
  auto rest = pointwise_transporter_coset(stab, xs.subspan(1), targets);
  if (!rest) return std::nullopt;
  return TransporterCoset{rest->witness * w, rest->stabilizer};
}

inline std::optional<Perm> pointwise_transporter(const PermGroup& g, std::span<const int> xs, std::span<const int> ys) {
  auto c = pointwise_transporter_coset(g, xs, ys);
  if (!c) return std::nullopt;
  return c->witness;
}

/// Every element, by breadth-first closure. Throws BudgetExceeded past `cap`.
inline std::vector<Perm> enumerate_elements(const PermGroup& g, std::size_t cap = 1'000'000) {
  std::unordered_set<Perm> seen;
  std::vector<Perm> out{Perm::identity(g.degree())};
  seen.insert(out[0]);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& s : g.generators()) {
      Perm q = out[i] * s;
      if (seen.insert(q).second) {
        if (out.size() >= cap) throw Error(ErrorCode::BudgetExceeded, "group larger than enumeration cap");
        out.push_back(std::move(q));
      }
    }
  }
  return out;
}

}  // namespace cayley
