#pragma once

#include <cstdint>
#include <vector>

#include "quasireg/dist.hpp"

namespace quasireg {

inline constexpr int kDefaultMaxBlockExponent = 14;

// Dyadic exponent per symbol: p_s lies in [2^-n_s, 2^-(n_s-1)]. Blocks have
// length 2^M with M = max n_s + 5.
struct Frame {
  std::vector<int> n;
  int M = 0;

  std::size_t size() const { return n.size(); }
  std::int64_t block_len() const { return std::int64_t{1} << M; }
  Ratio lo(Symbol s) const { return Ratio(1, std::int64_t{1} << n[s]); }
  Ratio hi(Symbol s) const { return Ratio(1, std::int64_t{1} << (n[s] - 1)); }
  // Allowed gap range for s in a compatible string.
  std::int64_t min_gap(Symbol s) const { return std::int64_t{1} << (n[s] - 1); }
  std::int64_t max_gap(Symbol s) const { return std::int64_t{1} << n[s]; }

  friend bool operator==(const Frame&, const Frame&) = default;
};

Frame frame_of(const Dist& p, int max_M = kDefaultMaxBlockExponent);
// Builds a frame from explicit exponents.
Frame make_frame(std::vector<int> n, int max_M = kDefaultMaxBlockExponent);

bool in_box(const Frame& f, const std::vector<Ratio>& p);

// Pseudo-binary approximation: every coordinate an interval endpoint except
// possibly `irr`, which then lies strictly inside its interval.
struct PBA {
  Dist dist;
  Symbol irr = kNoSymbol;

  friend bool operator==(const PBA& a, const PBA& b) { return a.dist == b.dist && a.irr == b.irr; }
};

bool is_endpoint(const Frame& f, Symbol s, const Ratio& v);
bool is_pba(const Frame& f, const std::vector<Ratio>& p);
// Classifies p; throws PreconditionError if it is not a PBA of the frame.
PBA make_pba(const Frame& f, const std::vector<Ratio>& p);

std::vector<PBA> pba_enumerate(const Frame& f);

struct Decomposition {
  struct Term {
    Ratio alpha;
    PBA pba;
  };
  std::vector<Term> terms;
};

// Exact convex combination of PBAs equal to p, with at most |Σ| terms. When
// the vertex set is small enough every affinely independent subset is solved
// and the terms are ordered to minimise the surplus the assembly loop adds per
// round; otherwise a ray-shooting elimination is used.
Decomposition pba_decompose(const Dist& p, const Frame& f);
Decomposition pba_decompose_ray(const Dist& p, const Frame& f);

bool pba_adjacent(const PBA& a, const PBA& b);
PBA pba_step(const PBA& p, const PBA& target, const Frame& f);
// Full chain p -> ... -> target produced by repeated pba_step (excludes p).
std::vector<PBA> pba_path(const PBA& p, const PBA& target, const Frame& f);

}  // namespace quasireg
