#pragma once

#include <cstdint>
#include <queue>
#include <span>
#include <vector>

#include "quasireg/dist.hpp"
#include "quasireg/stream.hpp"

namespace quasireg {

// Earliest-deadline-first realisation of a low-discrepancy word. The (c+1)-th
// occurrence of s is released after position floor(c/p_s) and due by
// ceil((c+1)/p_s); meeting every such window keeps |count_s(n) - n p_s| < 1.
class LowDiscState : public SymbolStream {
 public:
  explicit LowDiscState(Dist target);

  Symbol next() override;
  std::size_t alphabet_size() const override { return target_.size(); }

  std::int64_t position() const { return n_; }
  const std::vector<std::int64_t>& counts() const { return counts_; }
  const Dist& target() const { return target_; }

 private:
  struct Job {
    std::int64_t release;   // eligible at positions > release
    std::int64_t deadline;  // must be emitted at a position <= deadline
    std::uint32_t rank;     // tie-break: larger probability, then smaller id
    Symbol symbol;
  };
  struct ByRelease {
    bool operator()(const Job& a, const Job& b) const {
      return a.release != b.release ? a.release > b.release : a.rank > b.rank;
    }
  };
  struct ByDeadline {
    bool operator()(const Job& a, const Job& b) const {
      return a.deadline != b.deadline ? a.deadline > b.deadline : a.rank > b.rank;
    }
  };

  Job job_for(Symbol s) const;

  Dist target_;
  std::vector<std::int64_t> counts_;
  std::vector<std::uint32_t> rank_;
  std::int64_t n_ = 0;
  std::priority_queue<Job, std::vector<Job>, ByRelease> pending_;
  std::priority_queue<Job, std::vector<Job>, ByDeadline> ready_;
};

// |count of s in positions [M, M+N)| - N p_s| < 2 for every symbol s.
bool lowdisc_window_check(std::span<const Symbol> prefix, const Dist& p, std::int64_t M,
                          std::int64_t N);

}  // namespace quasireg
