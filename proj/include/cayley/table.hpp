#pragma once

#include <algorithm>
#include <fstream>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cayley/element_set.hpp"
#include "cayley/error.hpp"
#include "cayley/perm.hpp"

namespace cayley {

/// n x n operation table over element indices; row = left operand.
class MulTable {
 public:
  MulTable() = default;
  MulTable(int n, std::vector<Element> entries) : n_(n), tab_(std::move(entries)) {
    if (n < 1) throw Error(ErrorCode::InvalidTable, "table must have at least one element");
    if (tab_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
      throw Error(ErrorCode::InvalidTable, "expected " + std::to_string(n * n) + " entries");
    for (Element x : tab_)
      if (x < 0 || x >= n) throw Error(ErrorCode::InvalidTable, "entry " + std::to_string(x) + " out of range");
  }

  template <class F>
  static MulTable from_function(int n, F&& op) {
    std::vector<Element> t(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) t[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) + static_cast<std::size_t>(b)] = op(a, b);
    return MulTable(n, std::move(t));
  }

  int size() const noexcept { return n_; }
  Element operator()(Element a, Element b) const noexcept {
    return tab_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b)];
  }
  std::span<const Element> row(Element a) const noexcept {
    return {tab_.data() + static_cast<std::size_t>(a) * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)};
  }
  const std::vector<Element>& entries() const noexcept { return tab_; }

  friend bool operator==(const MulTable&, const MulTable&) = default;

 private:
  int n_ = 0;
  std::vector<Element> tab_;
};

/// relabel(t, pi)[pi(x)][pi(y)] = pi(t[x][y]).
inline MulTable relabel(const MulTable& t, const Perm& pi) {
  const int n = t.size();
  if (pi.degree() != n) throw Error(ErrorCode::InvalidTable, "relabel: permutation degree mismatch");
  std::vector<Element> out(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      out[static_cast<std::size_t>(pi(x)) * static_cast<std::size_t>(n) + static_cast<std::size_t>(pi(y))] = pi(t(x, y));
  return MulTable(n, std::move(out));
}

/// A Latin-square table together with its left and right divisions.
class QuasigroupTable {
 public:
  QuasigroupTable() = default;

  int size() const noexcept { return table_.size(); }
  Element operator()(Element a, Element b) const noexcept { return table_(a, b); }
  /// a \ b : the unique x with a*x = b.
  Element ldiv(Element a, Element b) const noexcept { return ldiv_[idx(a, b)]; }
  /// b / a : the unique y with y*a = b.
  Element rdiv(Element b, Element a) const noexcept { return rdiv_[idx(b, a)]; }
  const MulTable& table() const noexcept { return table_; }

  friend bool operator==(const QuasigroupTable& a, const QuasigroupTable& b) { return a.table_ == b.table_; }

 private:
  friend QuasigroupTable validate_quasigroup(const MulTable& t);
  friend class GroupTable;

  std::size_t idx(Element a, Element b) const noexcept {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(table_.size()) + static_cast<std::size_t>(b);
  }

  MulTable table_;
  std::vector<Element> ldiv_, rdiv_;
};

/// Checks that every row and column is a permutation and builds the divisions.
inline QuasigroupTable validate_quasigroup(const MulTable& t) {
  const int n = t.size();
  QuasigroupTable q;
  q.table_ = t;
  q.ldiv_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
  q.rdiv_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
  for (Element a = 0; a < n; ++a) {
    for (Element x = 0; x < n; ++x) {
      Element b = t(a, x);
      auto& slot = q.ldiv_[q.idx(a, b)];
      if (slot != -1)
        throw Error(ErrorCode::NotLatinSquare,
                    "row " + std::to_string(a) + " repeats value " + std::to_string(b));
      slot = x;
    }
  }
  for (Element a = 0; a < n; ++a) {
    for (Element y = 0; y < n; ++y) {
      Element b = t(y, a);
      auto& slot = q.rdiv_[q.idx(b, a)];
      if (slot != -1)
        throw Error(ErrorCode::NotLatinSquare,
                    "column " + std::to_string(a) + " repeats value " + std::to_string(b));
      slot = y;
    }
  }
  return q;
}

/// A validated group: associative Latin square with identity and inverses.
/// Element orders and commutativity are cached at construction.
class GroupTable {
 public:
  GroupTable() = default;

  /// Wraps a table already known to be a group (products, quotients,
  /// relabelings and subgroups of validated groups). Skips the O(n^3)
  /// associativity scan.
  static GroupTable trusted(const MulTable& t) {
    GroupTable g;
    g.q_ = validate_quasigroup(t);
    g.finish();
    return g;
  }

  int size() const noexcept { return q_.size(); }
  Element mul(Element a, Element b) const noexcept { return q_(a, b); }
  Element operator()(Element a, Element b) const noexcept { return q_(a, b); }
  Element identity() const noexcept { return e_; }
  Element inv(Element a) const noexcept { return inv_[static_cast<std::size_t>(a)]; }
  int order(Element a) const noexcept { return order_[static_cast<std::size_t>(a)]; }
  bool is_abelian() const noexcept { return abelian_; }
  /// g^k for k >= 0.
  Element pow(Element g, long long k) const noexcept {
    k %= order(g);
    Element r = e_;
    for (long long i = 0; i < k; ++i) r = mul(r, g);
    return r;
  }
  /// [g,h] = g h g^-1 h^-1.
  Element commutator(Element g, Element h) const noexcept { return mul(mul(g, h), mul(inv(g), inv(h))); }
  /// x g x^-1.
  Element conjugate(Element g, Element x) const noexcept { return mul(mul(x, g), inv(x)); }

  const MulTable& table() const noexcept { return q_.table(); }
  const QuasigroupTable& quasigroup() const noexcept { return q_; }

  friend bool operator==(const GroupTable& a, const GroupTable& b) { return a.table() == b.table(); }

 private:
  friend GroupTable validate_group(const MulTable& t);

  void finish() {
    const int n = q_.size();
    e_ = -1;
    for (Element x = 0; x < n && e_ < 0; ++x) {
      bool ok = true;
      for (Element y = 0; y < n && ok; ++y) ok = q_(x, y) == y && q_(y, x) == y;
      if (ok) e_ = x;
    }
    if (e_ < 0) throw Error(ErrorCode::NoIdentity, "no two-sided identity");
    inv_.resize(static_cast<std::size_t>(n));
    for (Element x = 0; x < n; ++x) {
      Element y = q_.ldiv(x, e_);
      if (q_(y, x) != e_) throw Error(ErrorCode::NoIdentity, "element " + std::to_string(x) + " has no inverse");
      inv_[static_cast<std::size_t>(x)] = y;
    }
    order_.resize(static_cast<std::size_t>(n));
    for (Element x = 0; x < n; ++x) {
      int k = 1;
      for (Element p = x; p != e_; p = q_(p, x)) ++k;
      order_[static_cast<std::size_t>(x)] = k;
    }
    abelian_ = true;
    for (Element x = 0; x < n && abelian_; ++x)
      for (Element y = x + 1; y < n && abelian_; ++y) abelian_ = q_(x, y) == q_(y, x);
  }

  QuasigroupTable q_;
  Element e_ = 0;
  std::vector<Element> inv_;
  std::vector<int> order_;
  bool abelian_ = true;
};

/// Full screening: associativity over all triples, then identity, then the
/// Latin property (equivalently, inverses).
inline GroupTable validate_group(const MulTable& t) {
  const int n = t.size();
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      const Element ab = t(a, b);
      for (Element c = 0; c < n; ++c)
        if (t(ab, c) != t(a, t(b, c)))
          throw Error(ErrorCode::NotAssociative, "(" + std::to_string(a) + "*" + std::to_string(b) + ")*" +
                                                     std::to_string(c) + " != " + std::to_string(a) + "*(" +
                                                     std::to_string(b) + "*" + std::to_string(c) + ")");
    }
  Element e = -1;
  for (Element x = 0; x < n && e < 0; ++x) {
    bool ok = true;
    for (Element y = 0; y < n && ok; ++y) ok = t(x, y) == y && t(y, x) == y;
    if (ok) e = x;
  }
  if (e < 0) throw Error(ErrorCode::NoIdentity, "no two-sided identity");
  GroupTable g;
  g.q_ = validate_quasigroup(t);
  g.finish();
  return g;
}

inline GroupTable relabel(const GroupTable& g, const Perm& pi) { return GroupTable::trusted(relabel(g.table(), pi)); }

// ---------------------------------------------------------------------------
// Text format
//
//   <kind> <n>
//   n lines of n space-separated 0-based indices
//
// Lines whose first non-blank character is '#' are comments.

enum class TableKind { Group, Quasigroup };

constexpr std::string_view to_string(TableKind k) { return k == TableKind::Group ? "group" : "quasigroup"; }

struct TableFile {
  TableKind kind = TableKind::Group;
  MulTable table;
};

inline TableFile parse_table_text(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::string cur;
    std::istringstream in{std::string(text)};
    while (std::getline(in, cur)) {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      auto first = cur.find_first_not_of(" \t");
      if (first == std::string::npos || cur[first] == '#') continue;
      lines.push_back(cur);
    }
  }
  if (lines.empty()) throw Error(ErrorCode::ParseError, "empty input");
  std::istringstream header(lines[0]);
  std::string kind;
  long long n = 0;
  if (!(header >> kind >> n)) throw Error(ErrorCode::ParseError, "header must be '<kind> <n>'");
  std::string trailing;
  if (header >> trailing) throw Error(ErrorCode::ParseError, "unexpected token in header: " + trailing);
  TableFile out;
  if (kind == "group")
    out.kind = TableKind::Group;
  else if (kind == "quasigroup")
    out.kind = TableKind::Quasigroup;
  else
    throw Error(ErrorCode::ParseError, "unknown kind '" + kind + "'");
  if (n < 1 || n > 1 << 15) throw Error(ErrorCode::ParseError, "bad element count");
  if (lines.size() != static_cast<std::size_t>(n) + 1)
    throw Error(ErrorCode::ParseError, "expected " + std::to_string(n) + " rows, got " + std::to_string(lines.size() - 1));
  std::vector<Element> entries;
  entries.reserve(static_cast<std::size_t>(n * n));
  for (long long r = 0; r < n; ++r) {
    std::istringstream row(lines[static_cast<std::size_t>(r) + 1]);
    long long v;
    long long cnt = 0;
    while (row >> v) {
      if (v < 0 || v >= n) throw Error(ErrorCode::ParseError, "row " + std::to_string(r) + ": entry out of range");
      entries.push_back(static_cast<Element>(v));
      ++cnt;
    }
    if (!row.eof()) throw Error(ErrorCode::ParseError, "row " + std::to_string(r) + ": non-integer token");
    if (cnt != n) throw Error(ErrorCode::ParseError, "row " + std::to_string(r) + ": expected " + std::to_string(n) + " entries");
  }
  out.table = MulTable(static_cast<int>(n), std::move(entries));
  return out;
}

inline std::string write_table_text(TableKind kind, const MulTable& t) {
  std::string s;
  s += to_string(kind);
  s += ' ';
  s += std::to_string(t.size());
  s += '\n';
  for (Element a = 0; a < t.size(); ++a) {
    for (Element b = 0; b < t.size(); ++b) {
      if (b) s += ' ';
      s += std::to_string(t(a, b));
    }
    s += '\n';
  }
  return s;
}

inline TableFile read_table_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_table_text(ss.str());
}

}  // namespace cayley
