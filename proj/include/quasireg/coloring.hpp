#pragma once

#include <cstdint>
#include <queue>
#include <vector>

#include "quasireg/dist.hpp"
#include "quasireg/lowdisc.hpp"
#include "quasireg/seqcore.hpp"
#include "quasireg/stream.hpp"

namespace quasireg {

// A coloring of N is handled as its color sequence: position m has color s(m),
// and f_c lists the positions of color c. Composition of colorings is stream
// substitution: every time the outer stream yields the composite color, the
// next color of the inner stream is taken.

// Pointwise f∘g on finite samples, defined while g(n) stays inside f's sample.
// Requires l*(g(n+1)-g(n)) >= k for every n.
IncreasingFn compose(const IncreasingFn& f, const IncreasingFn& g, std::int64_t k, std::int64_t l);

// The low-discrepancy coloring: QR_k(f_i) <= (k+2)/(k-2) for k >= 3.
class CoarseColoring : public LowDiscState {
 public:
  explicit CoarseColoring(Dist p) : LowDiscState(std::move(p)) {}
};

// Color 0 is the major color (p_0 > 1 - eps). The n-th occurrence of minor
// color i is placed in [floor((n - eps/2)/p_i), ceil((n + eps/2)/p_i)] by
// earliest deadline first; unclaimed positions get color 0.
class SparseColoring : public SymbolStream {
 public:
  SparseColoring(Dist p, Ratio eps);

  Symbol next() override;
  std::size_t alphabet_size() const override { return p_.size(); }
  const Dist& dist() const { return p_; }
  const Ratio& eps() const { return eps_; }

  // Window of the n-th (1-based) occurrence of color i >= 1.
  static std::pair<std::int64_t, std::int64_t> window(const Ratio& p_i, const Ratio& eps,
                                                      std::int64_t n);

 private:
  struct Job {
    std::int64_t release, deadline;
    Symbol color;
  };
  struct ByRelease {
    bool operator()(const Job& a, const Job& b) const {
      return a.release != b.release ? a.release > b.release : a.color > b.color;
    }
  };
  struct ByDeadline {
    bool operator()(const Job& a, const Job& b) const {
      return a.deadline != b.deadline ? a.deadline > b.deadline : a.color > b.color;
    }
  };
  Job job_for(Symbol c) const;

  Dist p_;
  Ratio eps_;
  std::vector<std::int64_t> counts_;
  std::int64_t y_ = 0;
  std::priority_queue<Job, std::vector<Job>, ByRelease> pending_;
  std::priority_queue<Job, std::vector<Job>, ByDeadline> ready_;
};

// expand_c(p) = (1 - c(1-p_0), c p_1, c p_2, ...) colored sparsely with
// tolerance c*eps, then spread out: positions not divisible by c get color 0
// and position m = c*j takes the inner color of j.
class ExpandedSparseColoring : public SymbolStream {
 public:
  ExpandedSparseColoring(const Dist& p, Ratio eps, std::int64_t c);

  Symbol next() override;
  std::size_t alphabet_size() const override { return inner_.alphabet_size(); }
  std::int64_t c() const { return c_; }

 private:
  static Dist expand(const Dist& p, std::int64_t c);

  SparseColoring inner_;
  std::int64_t c_;
  std::int64_t m_ = 0;
};

}  // namespace quasireg
