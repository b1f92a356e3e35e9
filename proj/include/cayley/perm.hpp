#pragma once

#include <algorithm>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "cayley/error.hpp"

namespace cayley {

/// A permutation of [0, m), stored by images. Composition follows the right
/// action convention used for permutation groups: x^(a*b) = (x^a)^b, i.e.
/// `a * b` applies a first.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (int y : images_) {
      if (y < 0 || static_cast<std::size_t>(y) >= images_.size() || seen[static_cast<std::size_t>(y)])
        throw Error(ErrorCode::InvalidTable, "image list is not a permutation");
      seen[static_cast<std::size_t>(y)] = 1;
    }
  }

  static Perm identity(int m) {
    std::vector<int> v(static_cast<std::size_t>(m));
    std::iota(v.begin(), v.end(), 0);
    Perm p;
    p.images_ = std::move(v);
    return p;
  }

  /// Builds from disjoint cycles, e.g. {{0,1,2},{3,4}}.
  static Perm from_cycles(int m, const std::vector<std::vector<int>>& cycles) {
    Perm p = identity(m);
    for (const auto& c : cycles)
      for (std::size_t i = 0; i < c.size(); ++i)
        p.images_[static_cast<std::size_t>(c[i])] = c[(i + 1) % c.size()];
    return Perm(std::move(p.images_));
  }

  int degree() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int x) const noexcept { return images_[static_cast<std::size_t>(x)]; }
  std::span<const int> images() const noexcept { return images_; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != static_cast<int>(i)) return false;
    return true;
  }

  Perm inverse() const {
    Perm r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      r.images_[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
    return r;
  }

  /// First point moved, or -1 for the identity.
  int first_moved() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != static_cast<int>(i)) return static_cast<int>(i);
    return -1;
  }

  friend Perm operator*(const Perm& a, const Perm& b) {
    Perm r;
    r.images_.resize(a.images_.size());
    for (std::size_t i = 0; i < a.images_.size(); ++i)
      r.images_[i] = b.images_[static_cast<std::size_t>(a.images_[i])];
    return r;
  }

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm& a, const Perm& b) { return a.images_ <=> b.images_; }

  /// One-line image list: `p: i0 i1 ... i{m-1}`.
  std::string to_string() const {
    std::ostringstream os;
    os << "p:";
    for (int y : images_) os << ' ' << y;
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Perm& p) { return os << p.to_string(); }

 private:
  std::vector<int> images_;
};

}  // namespace cayley

template <>
struct std::hash<cayley::Perm> {
  std::size_t operator()(const cayley::Perm& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int x : p.images()) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};
