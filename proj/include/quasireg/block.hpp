#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "quasireg/dist.hpp"
#include "quasireg/frame.hpp"

namespace quasireg {

// A string on a finite index set I of positive integers.
class Block {
 public:
  Block() = default;
  // Parallel arrays; positions must be strictly increasing and >= 1.
  Block(std::vector<std::int64_t> positions, std::vector<Symbol> chars);
  // The string c_1 c_2 ... on [1, |chars|].
  static Block dense(const Sequence& chars);

  std::size_t size() const { return pos_.size(); }
  bool empty() const { return pos_.empty(); }
  const std::vector<std::int64_t>& positions() const { return pos_; }
  const std::vector<Symbol>& chars() const { return chr_; }
  std::int64_t max_index() const { return pos_.empty() ? 0 : pos_.back(); }
  // Symbols that appear, ascending.
  std::set<Symbol> appears() const;
  // True when the domain is exactly [1, size()].
  bool is_dense() const;
  std::optional<Symbol> at(std::int64_t index) const;

  Block translate(std::int64_t m) const;
  Block restrict_to(std::int64_t lo, std::int64_t hi) const;  // domain ∩ [lo, hi]

  friend bool operator==(const Block&, const Block&) = default;

 private:
  std::vector<std::int64_t> pos_;
  std::vector<Symbol> chr_;
};

// ceil(max I / 2^M); 0 for the empty domain.
std::int64_t max_window(const Block& s, const Frame& f);

Block join(const Block& s, const Block& t);  // disjoint union
Block concat_n(const Block& s, const Block& t, const Frame& f);
Block repeat_n(const Block& s, std::int64_t k, const Frame& f);
Block window(const Block& s, const Frame& f, std::int64_t k);
Block diamond_n(const Block& s, const Block& t, const Frame& f);

// Gap extremes over the (possibly sparse) domain. max_gap also counts runs
// free of the symbol that touch the ends of the domain; min_gap is nullopt
// (infinite) when the symbol occurs fewer than twice.
std::int64_t block_max_gap(const Block& s, Symbol sym);
std::optional<std::int64_t> block_min_gap(const Block& s, Symbol sym);

bool verify_compatible(const Block& s, const Frame& f, bool local);
bool verify_uniform(const Block& s, const Frame& f, const Dist& p);
bool verify_connection(const Block& s, const Block& s2, const Block& t, const Frame& f);

// Compact rendering for diagnostics, e.g. "abab|ab".
std::string describe(const Block& s, std::int64_t block_len);

}  // namespace quasireg
