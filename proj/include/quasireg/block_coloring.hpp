#pragma once

#include <cstdint>
#include <list>
#include <memory>
#include <vector>

#include "quasireg/dist.hpp"
#include "quasireg/lowdisc.hpp"
#include "quasireg/stream.hpp"

namespace quasireg {

struct BlockColoringParams {
  std::int64_t M = 0;        // cycle (block) length
  Ratio delta_match;         // matching radius as a fraction of the cycle
  std::uint64_t seed = 0;
  int max_retries = 32;      // random phase draws after the deterministic one
};

// Desk-scale parameters for a bucket of n symbols: M = n^2,
// delta = 1/(4 n sqrt n) rounded down to a rational.
BlockColoringParams desk_block_params(std::size_t n, std::uint64_t seed);

// q = sum_j alpha_j (counts_j / M) with integer counts summing to M, each count
// floor or ceil of q_i M. At most n+1 terms.
struct GridTerm {
  Ratio alpha;
  std::vector<std::int64_t> counts;
};
std::vector<GridTerm> grid_decompose(const Dist& q, std::int64_t M);

struct BlockColoringStats {
  std::size_t terms = 0;
  int attempts = 0;          // phase vectors evaluated
  double radius = 0.0;       // worst slot displacement seen, in positions
  double grid_error = 0.0;   // max |M/count - 1/q_i|
  Ratio delta_used;          // >= delta_match; larger only if the radius required it
  bool enlarged = false;
};

// Periodic-block coloring: each block places symbol i's points at
// phi_i + l*M/count_i and assigns them to the M slots in sorted order, which is
// the bottleneck-optimal matching on a line. Blocks are picked by a
// low-discrepancy stream over the grid weights. Phases are shared by all
// blocks so gaps across block boundaries stay in range.
class BlockColoring : public SymbolStream {
 public:
  BlockColoring(Dist q, BlockColoringParams params);

  Symbol next() override;
  std::size_t alphabet_size() const override { return q_.size(); }

  const BlockColoringStats& stats() const { return stats_; }
  const std::vector<GridTerm>& terms() const { return terms_; }
  const std::vector<double>& phases() const { return phases_; }
  const Dist& dist() const { return q_; }
  const BlockColoringParams& params() const { return params_; }

  // Lays out block j with the current phases; returns the worst displacement
  // and optionally the signed extremes.
  double layout(std::size_t j, std::vector<Symbol>* out, double* lo = nullptr,
                double* hi = nullptr) const;

 private:
  void choose_phases();
  void center(const std::vector<std::size_t>& idx);
  const std::vector<Symbol>& block(std::size_t j);
  void update_delta(double radius);

  Dist q_;
  BlockColoringParams params_;
  std::vector<GridTerm> terms_;
  std::vector<double> phases_;
  BlockColoringStats stats_;
  std::unique_ptr<LowDiscState> order_;
  std::list<std::pair<std::size_t, std::vector<Symbol>>> cache_;
  std::vector<bool> checked_;
  const std::vector<Symbol>* cur_ = nullptr;
  std::size_t pos_ = 0;
};

}  // namespace quasireg
