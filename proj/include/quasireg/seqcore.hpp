#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "quasireg/dist.hpp"
#include "quasireg/ratio.hpp"

namespace quasireg {

struct SymbolGaps {
  std::int64_t first_pos = 0;  // 1-based; 0 when absent
  std::int64_t last_pos = 0;
  std::int64_t min_gap = 0;    // 0 when count < 2
  std::int64_t max_gap = 0;
  std::int64_t count = 0;
};

struct GapStats {
  std::int64_t length = 0;
  std::vector<SymbolGaps> symbols;  // indexed by Symbol
};

GapStats gap_stats(std::span<const Symbol> prefix, std::size_t alphabet_size = 0);

// max_gap/min_gap for one symbol; 1 when it occurs at most once.
Ratio qr_of(const SymbolGaps& g);
// Sup over symbols present in the stats.
Ratio qr_observed(const GapStats& stats);

// Finite sample f(1..m) of a strictly increasing function N -> N.
class IncreasingFn {
 public:
  IncreasingFn() = default;
  explicit IncreasingFn(std::vector<std::int64_t> sample);
  std::size_t size() const { return v_.size(); }
  // 1-based like the functions it models.
  std::int64_t operator()(std::size_t i) const { return v_[i - 1]; }
  const std::vector<std::int64_t>& values() const { return v_; }
  std::int64_t min_gap() const;
  std::int64_t max_gap() const;

 private:
  std::vector<std::int64_t> v_;
};

// Positions (1-based) at which `s` occurs in the prefix.
IncreasingFn positions_of(std::span<const Symbol> prefix, Symbol s);

// Sup over r, q >= k of (q/r)(f(n+r)-f(n))/(f(m+q)-f(m)), restricted to windows
// lying inside the sample.
Ratio qr_k(const IncreasingFn& f, std::int64_t k);

std::vector<Ratio> empirical_density(std::span<const Symbol> prefix, std::size_t alphabet_size = 0);

Ratio discrepancy(std::span<const Symbol> prefix, const Dist& p);

bool check_min_gap_bound(const IncreasingFn& f, const Ratio& density);

// Single-pass accumulator for gap statistics, counts and prefix discrepancy.
// Memory is O(alphabet), independent of stream length.
class StreamAnalyzer {
 public:
  explicit StreamAnalyzer(std::size_t alphabet_size, std::optional<Dist> target = std::nullopt);

  void push(Symbol s);
  void finish();  // folds in the end-of-prefix discrepancy terms; idempotent

  std::int64_t length() const { return stats_.length; }
  const GapStats& stats() const { return stats_; }
  Ratio qr() const { return qr_observed(stats_); }
  std::vector<Ratio> density() const;
  // Only meaningful with a target, after finish().
  Ratio discrepancy() const;
  // Symbols whose last occurrence lies before the final 2*max_gap positions;
  // on an infinite stream these may have stopped appearing.
  std::vector<Symbol> stale_symbols() const;

 private:
  void note_discrepancy(Symbol s, std::int64_t count, std::int64_t n);

  GapStats stats_;
  std::optional<Dist> target_;
  std::vector<__int128> worst_;  // max |count*den - n*num| per symbol
  bool finished_ = false;
};

}  // namespace quasireg
