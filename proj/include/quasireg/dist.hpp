#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "quasireg/ratio.hpp"

namespace quasireg {

using Symbol = std::uint32_t;

// Reserved id standing for "no symbol" (the irr marker of an endpoint-only
// approximation, an unset cell, ...). Never part of a user alphabet.
inline constexpr Symbol kNoSymbol = std::numeric_limits<Symbol>::max();

using Sequence = std::vector<Symbol>;

// Probability distribution over the dense alphabet [0, size()).
class Dist {
 public:
  Dist() = default;
  // Validates: every entry in (0,1] and the entries sum to exactly 1.
  explicit Dist(std::vector<Ratio> probs);

  // Skips validation; used for intermediate points that are checked later.
  static Dist unchecked(std::vector<Ratio> probs);

  std::size_t size() const { return probs_.size(); }
  const Ratio& operator[](Symbol s) const { return probs_.at(s); }
  const std::vector<Ratio>& probs() const { return probs_; }
  Ratio max_prob() const;
  Ratio total() const;

  friend bool operator==(const Dist& a, const Dist& b) { return a.probs_ == b.probs_; }

 private:
  std::vector<Ratio> probs_;
};

}  // namespace quasireg
