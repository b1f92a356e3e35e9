#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cayley/error.hpp"
#include "cayley/table.hpp"

namespace cayley {

enum class WLVersion { I, II };
enum class WLMode { Counting, CountFree };

inline std::string to_string(WLVersion v) { return v == WLVersion::I ? "I" : "II"; }
inline std::string to_string(WLMode m) { return m == WLMode::Counting ? "counting" : "count_free"; }

struct WLConfig {
  int k = 2;
  std::optional<int> rounds;  // nullopt: until stable
  WLVersion version = WLVersion::II;
  WLMode mode = WLMode::Counting;
  std::uint64_t memory_cap = 100'000'000;  // bytes
};

/// Colors of k-tuples. Tuple (g_0, ..., g_{k-1}) sits at index
/// sum g_i * n^(k-1-i).
struct Coloring {
  int k = 0;
  int n = 0;
  int round = 0;
  int num_colors = 0;
  std::vector<int> colors;

  int color(std::span<const Element> t) const {
    std::size_t idx = 0;
    for (Element x : t) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(x);
    return colors[idx];
  }
};

/// Colorings of several groups of equal order sharing one color dictionary.
struct JointColoring {
  int k = 0;
  int n = 0;
  int round = 0;
  int num_colors = 0;
  std::vector<std::vector<int>> colors;  // per group
};

/// Canonical serialization of <t> with t marked: the Cayley graph of <t>
/// with respect to the tuple, vertices numbered by breadth-first search from
/// the identity expanding generators in tuple order. Layout: k, |<t>|, the
/// vertex of each t_i, then for each vertex v and each i the vertex of v*t_i.
class MarkedFormBuilder {
 public:
  explicit MarkedFormBuilder(const GroupTable& g) : g_(g), index_(static_cast<std::size_t>(g.size()), 0), stamp_(static_cast<std::size_t>(g.size()), 0) {}

  const std::vector<int>& form(std::span<const Element> t) {
    run(t);
    return form_;
  }
  /// Elements of <t> in vertex order, valid after form().
  const std::vector<Element>& order() const noexcept { return order_; }

 private:
  void run(std::span<const Element> t) {
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
    const std::size_t k = t.size();
    order_.clear();
    auto visit = [&](Element x) {
      if (stamp_[static_cast<std::size_t>(x)] != epoch_) {
        stamp_[static_cast<std::size_t>(x)] = epoch_;
        index_[static_cast<std::size_t>(x)] = static_cast<int>(order_.size());
        order_.push_back(x);
      }
      return index_[static_cast<std::size_t>(x)];
    };
    visit(g_.identity());
    edges_.clear();
    for (std::size_t v = 0; v < order_.size(); ++v) {
      const Element x = order_[v];
      for (std::size_t i = 0; i < k; ++i) edges_.push_back(visit(g_.mul(x, t[i])));
    }
    form_.clear();
    form_.push_back(static_cast<int>(k));
    form_.push_back(static_cast<int>(order_.size()));
    for (std::size_t i = 0; i < k; ++i) form_.push_back(index_[static_cast<std::size_t>(t[i])]);
    form_.insert(form_.end(), edges_.begin(), edges_.end());
  }

  const GroupTable& g_;
  std::vector<int> index_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<Element> order_;
  std::vector<int> edges_;
  std::vector<int> form_;
};

inline std::vector<int> marked_form(const GroupTable& g, std::span<const Element> t) {
  MarkedFormBuilder b(g);
  return b.form(t);
}

namespace detail {

struct VecHash {
  template <class T>
  std::size_t operator()(const std::vector<T>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull ^ v.size();
    for (auto x : v) {
      h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

// Interns signatures to provisional ids, then renumbers by sorted signature.
template <class Sig>
class SignatureTable {
 public:
  int intern(Sig&& s) {
    auto [it, inserted] = ids_.try_emplace(std::move(s), static_cast<int>(ids_.size()));
    return it->second;
  }
  // Maps provisional ids to ids in sorted signature order.
  std::vector<int> sorted_ids() const {
    std::vector<const Sig*> keys(ids_.size());
    for (const auto& [k, v] : ids_) keys[static_cast<std::size_t>(v)] = &k;
    std::vector<int> perm(keys.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) { return *keys[static_cast<std::size_t>(a)] < *keys[static_cast<std::size_t>(b)]; });
    std::vector<int> rank(keys.size());
    for (std::size_t i = 0; i < perm.size(); ++i) rank[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
    return rank;
  }
  std::size_t size() const noexcept { return ids_.size(); }

 private:
  std::unordered_map<Sig, int, VecHash> ids_;
};

inline std::size_t tuple_count(int n, int k) {
  std::size_t c = 1;
  for (int i = 0; i < k; ++i) c *= static_cast<std::size_t>(n);
  return c;
}

inline void check_budget(std::size_t groups, int n, int k, std::uint64_t cap) {
  if (k < 1) throw Error(ErrorCode::ParseError, "WL dimension must be at least 1");
  if (k > 5) throw Error(ErrorCode::BudgetExceeded, "WL dimensions above 5 are not supported");
  long double bytes = static_cast<long double>(groups) * 8.0L;
  for (int i = 0; i < k; ++i) bytes *= n;
  if (bytes > static_cast<long double>(cap))
    throw Error(ErrorCode::BudgetExceeded, "WL state of " + std::to_string(static_cast<unsigned long long>(bytes)) +
                                               " bytes exceeds memory cap " + std::to_string(cap));
}

inline std::vector<Element> decode_tuple(std::size_t idx, int n, int k) {
  std::vector<Element> t(static_cast<std::size_t>(k));
  for (int i = k - 1; i >= 0; --i) {
    t[static_cast<std::size_t>(i)] = static_cast<Element>(idx % static_cast<std::size_t>(n));
    idx /= static_cast<std::size_t>(n);
  }
  return t;
}

inline std::vector<int> version_one_signature(const GroupTable& g, std::span<const Element> t) {
  const std::size_t k = t.size();
  std::vector<int> sig;
  sig.reserve(k * k + k * k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) sig.push_back(t[i] == t[j]);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const Element p = g.mul(t[i], t[j]);
      for (std::size_t l = 0; l < k; ++l) sig.push_back(p == t[l]);
    }
  return sig;
}

}  // namespace detail

/// Round-0 coloring of every group jointly.
inline JointColoring joint_initial_coloring(std::span<const GroupTable* const> groups, const WLConfig& cfg) {
  const int n = groups.front()->size();
  for (const auto* g : groups)
    if (g->size() != n) throw Error(ErrorCode::InvalidTable, "joint coloring needs groups of equal order");
  detail::check_budget(groups.size(), n, cfg.k, cfg.memory_cap);
  const std::size_t total = detail::tuple_count(n, cfg.k);
  JointColoring jc{cfg.k, n, 0, 0, {}};
  detail::SignatureTable<std::vector<int>> table;
  for (const auto* g : groups) {
    std::vector<int> col(total);
    MarkedFormBuilder mf(*g);
    for (std::size_t idx = 0; idx < total; ++idx) {
      const auto t = detail::decode_tuple(idx, n, cfg.k);
      if (cfg.version == WLVersion::II) {
        col[idx] = table.intern(std::vector<int>(mf.form(t)));
      } else {
        col[idx] = table.intern(detail::version_one_signature(*g, t));
      }
    }
    jc.colors.push_back(std::move(col));
  }
  const auto rank = table.sorted_ids();
  for (auto& col : jc.colors)
    for (int& c : col) c = rank[static_cast<std::size_t>(c)];
  jc.num_colors = static_cast<int>(table.size());
  return jc;
}

/// One refinement round. The new color of t is its old color together with
/// the multiset (or set) over x of the vectors of colors of t with one
/// coordinate replaced by x.
inline JointColoring joint_refine_step(std::span<const GroupTable* const> groups, const JointColoring& jc, WLMode mode) {
  const int n = jc.n;
  const int k = jc.k;
  const std::size_t total = detail::tuple_count(n, k);
  std::vector<std::size_t> weight(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) weight[static_cast<std::size_t>(i)] = detail::tuple_count(n, k - 1 - i);

  // Packs a k-vector of colors into one word when C^k fits.
  long double range = 1;
  for (int i = 0; i < k; ++i) range *= jc.num_colors;
  const std::size_t width = range < 1.8e19L ? 1 : static_cast<std::size_t>(k);
  const auto base = static_cast<std::uint64_t>(jc.num_colors);

  JointColoring out{k, n, jc.round + 1, 0, {}};
  detail::SignatureTable<std::vector<std::uint64_t>> table;
  std::vector<std::uint64_t> chunks(static_cast<std::size_t>(n) * width);
  std::vector<std::size_t> order(static_cast<std::size_t>(n));
  std::vector<std::size_t> off(static_cast<std::size_t>(k));
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& col = jc.colors[gi];
    std::vector<int> next(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rest = idx;
      for (int i = k - 1; i >= 0; --i) {
        const std::size_t w = weight[static_cast<std::size_t>(i)];
        const std::size_t digit = rest % static_cast<std::size_t>(n);
        rest /= static_cast<std::size_t>(n);
        off[static_cast<std::size_t>(i)] = idx - digit * w;
      }
      for (std::size_t x = 0; x < static_cast<std::size_t>(n); ++x) {
        if (width == 1) {
          std::uint64_t code = 0;
          for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i)
            code = code * base + static_cast<std::uint64_t>(col[off[i] + x * weight[i]]);
          chunks[x] = code;
        } else {
          for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i)
            chunks[x * width + i] = static_cast<std::uint64_t>(col[off[i] + x * weight[i]]);
        }
      }
      std::vector<std::uint64_t> sig;
      sig.reserve(1 + chunks.size());
      sig.push_back(static_cast<std::uint64_t>(col[idx]));
      if (width == 1) {
        std::sort(chunks.begin(), chunks.end());
        std::size_t m = chunks.size();
        if (mode == WLMode::CountFree) m = static_cast<std::size_t>(std::unique(chunks.begin(), chunks.end()) - chunks.begin());
        sig.insert(sig.end(), chunks.begin(), chunks.begin() + static_cast<std::ptrdiff_t>(m));
      } else {
        for (std::size_t x = 0; x < order.size(); ++x) order[x] = x;
        auto chunk_less = [&](std::size_t a, std::size_t b) {
          return std::lexicographical_compare(chunks.begin() + static_cast<std::ptrdiff_t>(a * width), chunks.begin() + static_cast<std::ptrdiff_t>((a + 1) * width),
                                              chunks.begin() + static_cast<std::ptrdiff_t>(b * width), chunks.begin() + static_cast<std::ptrdiff_t>((b + 1) * width));
        };
        std::sort(order.begin(), order.end(), chunk_less);
        for (std::size_t j = 0; j < order.size(); ++j) {
          if (mode == WLMode::CountFree && j > 0 && !chunk_less(order[j - 1], order[j])) continue;
          sig.insert(sig.end(), chunks.begin() + static_cast<std::ptrdiff_t>(order[j] * width), chunks.begin() + static_cast<std::ptrdiff_t>((order[j] + 1) * width));
        }
      }
      next[idx] = table.intern(std::move(sig));
    }
    out.colors.push_back(std::move(next));
  }
  const auto rank = table.sorted_ids();
  for (auto& col : out.colors)
    for (int& c : col) c = rank[static_cast<std::size_t>(c)];
  out.num_colors = static_cast<int>(table.size());
  return out;
}

inline Coloring initial_coloring(const GroupTable& g, const WLConfig& cfg) {
  const GroupTable* gs[] = {&g};
  auto jc = joint_initial_coloring(gs, cfg);
  return {jc.k, jc.n, 0, jc.num_colors, std::move(jc.colors.front())};
}

inline Coloring refine_step(const GroupTable& g, const Coloring& c, WLMode mode) {
  const GroupTable* gs[] = {&g};
  JointColoring jc{c.k, c.n, c.round, c.num_colors, {c.colors}};
  auto next = joint_refine_step(gs, jc, mode);
  return {next.k, next.n, next.round, next.num_colors, std::move(next.colors.front())};
}

struct StableColoring {
  Coloring coloring;
  int rounds_used = 0;  // r with chi_r stable (or the cap)
};

/// Refines until the partition stops changing or the round cap is hit.
inline StableColoring stable_coloring(const GroupTable& g, const WLConfig& cfg) {
  Coloring c = initial_coloring(g, cfg);
  while (!cfg.rounds || c.round < *cfg.rounds) {
    Coloring next = refine_step(g, c, cfg.mode);
    if (next.num_colors == c.num_colors) break;
    c = std::move(next);
  }
  return {c, c.round};
}

/// Sizes of the color classes, indexed by color id.
inline std::vector<std::size_t> class_sizes(const std::vector<int>& colors, int num_colors) {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(num_colors), 0);
  for (int c : colors) ++sizes[static_cast<std::size_t>(c)];
  return sizes;
}

struct WLResult {
  bool distinguished = false;
  std::optional<int> witness_color;
  int rounds_used = 0;
  std::vector<std::size_t> class_sizes;  // of the first group at the last round computed
};

namespace detail {

inline std::optional<int> distinguishing_color(const JointColoring& jc, WLMode mode) {
  const auto a = class_sizes(jc.colors[0], jc.num_colors);
  const auto b = class_sizes(jc.colors[1], jc.num_colors);
  for (std::size_t c = 0; c < a.size(); ++c) {
    const bool differs = mode == WLMode::Counting ? a[c] != b[c] : (a[c] > 0) != (b[c] > 0);
    if (differs) return static_cast<int>(c);
  }
  return std::nullopt;
}

}  // namespace detail

/// Runs both groups through one joint coloring and reports whether some
/// color class tells them apart (multiplicity for counting, presence for
/// count-free) at any round up to the cap or the stable round.
inline WLResult wl_distinguishes(const GroupTable& g, const GroupTable& h, const WLConfig& cfg) {
  WLResult r;
  if (g.size() != h.size()) {
    r.distinguished = true;
    return r;
  }
  const GroupTable* gs[] = {&g, &h};
  JointColoring jc = joint_initial_coloring(gs, cfg);
  while (true) {
    r.rounds_used = jc.round;
    r.class_sizes = class_sizes(jc.colors[0], jc.num_colors);
    if (auto w = detail::distinguishing_color(jc, cfg.mode)) {
      r.distinguished = true;
      r.witness_color = w;
      return r;
    }
    if (cfg.rounds && jc.round >= *cfg.rounds) return r;
    JointColoring next = joint_refine_step(gs, jc, cfg.mode);
    if (next.num_colors == jc.num_colors) return r;
    jc = std::move(next);
  }
}

}  // namespace cayley
