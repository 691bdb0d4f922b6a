#pragma once

// Generators and brute-force oracles shared by the unit and acceptance tests.
// Oracles are written directly from the definitions and never call the code
// they check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "quasireg/dist.hpp"
#include "quasireg/ratio.hpp"

namespace qtest {

using quasireg::Dist;
using quasireg::Ratio;
using quasireg::Sequence;
using quasireg::Symbol;

inline std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Integer weights in [1, max_weight] normalised exactly.
inline Dist random_dist(std::mt19937_64& rng, std::size_t k, std::int64_t max_weight) {
  std::vector<std::int64_t> w(k);
  std::int64_t total = 0;
  for (auto& x : w) {
    x = uniform_int(rng, 1, max_weight);
    total += x;
  }
  std::vector<Ratio> p;
  for (auto x : w) p.emplace_back(x, total);
  return Dist(p);
}

inline Dist dist_of(std::initializer_list<Ratio> ps) { return Dist(std::vector<Ratio>(ps)); }

// Random distribution with every denominator dividing den.
inline Dist random_grid_dist(std::mt19937_64& rng, std::size_t k, std::int64_t den) {
  std::vector<std::int64_t> c(k, 1);
  for (std::int64_t left = den - static_cast<std::int64_t>(k); left > 0; --left) {
    ++c[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(k) - 1))];
  }
  std::vector<Ratio> p;
  for (auto x : c) p.emplace_back(x, den);
  return Dist(p);
}

// Consecutive distances between occurrences of s, positions counted from 1.
inline std::vector<std::int64_t> gaps_of(const Sequence& seq, Symbol s) {
  std::vector<std::int64_t> out;
  std::int64_t last = -1;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] != s) continue;
    const auto pos = static_cast<std::int64_t>(i) + 1;
    if (last >= 0) out.push_back(pos - last);
    last = pos;
  }
  return out;
}

// max gap / min gap, 1 with fewer than two occurrences.
inline Ratio qr_oracle(const Sequence& seq, Symbol s) {
  const auto g = gaps_of(seq, s);
  if (g.empty()) return Ratio(1);
  return Ratio(*std::max_element(g.begin(), g.end()), *std::min_element(g.begin(), g.end()));
}

// sup over prefixes n and symbols of |count - n p|, straight from the definition.
inline Ratio discrepancy_oracle(const Sequence& seq, const Dist& p) {
  std::vector<std::int64_t> count(p.size(), 0);
  Ratio worst = 0;
  for (std::size_t n = 1; n <= seq.size(); ++n) {
    ++count[seq[n - 1]];
    for (Symbol s = 0; s < p.size(); ++s) {
      worst = std::max(worst, (Ratio(count[s]) - Ratio(static_cast<std::int64_t>(n)) * p[s]).abs());
    }
  }
  return worst;
}

// Definitional QR_k: every quadruple (n, r, m, q) with r, q >= k inside the sample.
inline Ratio qr_k_oracle(const std::vector<std::int64_t>& f, std::int64_t k) {
  const auto m = static_cast<std::int64_t>(f.size());
  Ratio best = 0;
  for (std::int64_t r = k; r < m; ++r) {
    for (std::int64_t q = k; q < m; ++q) {
      for (std::int64_t a = 0; a + r < m; ++a) {
        for (std::int64_t b = 0; b + q < m; ++b) {
          const Ratio v = Ratio(q, r) * Ratio(f[a + r] - f[a], f[b + q] - f[b]);
          best = std::max(best, v);
        }
      }
    }
  }
  return best;
}

// Strictly increasing sample with gaps drawn from [lo, hi].
inline std::vector<std::int64_t> random_increasing(std::mt19937_64& rng, std::size_t m, std::int64_t lo,
                                                   std::int64_t hi) {
  std::vector<std::int64_t> f;
  std::int64_t x = uniform_int(rng, 1, hi);
  for (std::size_t i = 0; i < m; ++i) {
    f.push_back(x);
    x += uniform_int(rng, lo, hi);
  }
  return f;
}

}  // namespace qtest
