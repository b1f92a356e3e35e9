#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>

#include "cayley/error.hpp"
#include "cayley/wl.hpp"

namespace cayley {

/// Budgets and defaults shared by the CLI and the library entry points.
struct RunConfig {
  std::uint64_t memory_cap = 100'000'000;  // bytes
  double time_budget = 30.0;               // seconds
  int k = 2;
  std::optional<int> rounds;
  WLVersion version = WLVersion::II;
  WLMode mode = WLMode::Counting;
  int d = 3;
  std::size_t aut_cap = 1'000'000;

  WLConfig wl() const { return {k, rounds, version, mode, memory_cap}; }

  /// Applies CAYLEY_MEM_CAP, CAYLEY_TIME_BUDGET and CAYLEY_AUT_CAP.
  void apply_env() {
    if (const char* v = std::getenv("CAYLEY_MEM_CAP")) memory_cap = parse_positive<std::uint64_t>("CAYLEY_MEM_CAP", v);
    if (const char* v = std::getenv("CAYLEY_TIME_BUDGET")) time_budget = parse_positive<double>("CAYLEY_TIME_BUDGET", v);
    if (const char* v = std::getenv("CAYLEY_AUT_CAP")) aut_cap = parse_positive<std::size_t>("CAYLEY_AUT_CAP", v);
  }

 private:
  template <class T>
  static T parse_positive(const char* name, const char* text) {
    try {
      const double x = std::stod(text);
      if (x > 0) return static_cast<T>(x);
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::ParseError, std::string(name) + " must be a positive number");
  }
};

class Deadline {
 public:
  explicit Deadline(double seconds = 30.0)
      : end_(std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(seconds))) {}

  bool expired() const { return std::chrono::steady_clock::now() > end_; }
  void check(const char* what) const {
    if (expired()) throw Error(ErrorCode::BudgetExceeded, std::string(what) + ": time budget exceeded");
  }

 private:
  std::chrono::steady_clock::time_point end_;
};

}  // namespace cayley
