#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "quasireg/epsqr.hpp"
#include "quasireg/ratio.hpp"
#include "quasireg/stream.hpp"

namespace quasireg {

// Tasks are numbered 1..n in schedules; 0 marks an idle slot.
inline constexpr Symbol kIdle = 0;

// Periods v_1..v_n, each at least 2.
class PinwheelInstance {
 public:
  explicit PinwheelInstance(std::vector<std::int64_t> v);
  const std::vector<std::int64_t>& v() const { return v_; }
  std::size_t size() const { return v_.size(); }
  std::int64_t operator[](std::size_t k) const { return v_[k]; }  // 0-based
  Ratio density() const;

 private:
  std::vector<std::int64_t> v_;
};

Ratio density(const std::vector<std::int64_t>& v);

struct Violation {
  std::size_t task = 0;         // 1-based
  std::int64_t window_start = 0;  // 1-based; for periodic words taken mod the period
  friend bool operator==(const Violation&, const Violation&) = default;
};

// Earliest window (ties: smaller task) of length v_k without task k. A
// periodic word is checked cyclically, a prefix only on complete windows.
std::optional<Violation> verify_schedule(const PinwheelInstance& inst, std::span<const Symbol> s,
                                         bool periodic);

// Online form of the prefix check.
class ScheduleVerifier {
 public:
  explicit ScheduleVerifier(const PinwheelInstance& inst);
  // Consumes the symbol at the next position; idle symbols are allowed.
  std::optional<Violation> push(Symbol s);
  std::int64_t position() const { return t_; }

 private:
  std::vector<std::int64_t> v_;
  std::vector<std::int64_t> last_;  // last position of each task, 0 before any
  std::set<std::pair<std::int64_t, std::size_t>> due_;  // (last + v_k, k)
  std::int64_t t_ = 0;
};

struct SolveResult {
  bool schedulable = false;
  std::vector<Symbol> word;  // one period, tasks 1..n
  std::uint64_t states_visited = 0;
};

// Exhaustive search over "steps since last service" states. Throws
// PreconditionError when the product of the periods exceeds state_cap.
SolveResult solve_exact(const PinwheelInstance& inst, std::uint64_t state_cap = 10'000'000);

struct DenseOptions {
  Ratio eps;                          // requires d(v)(1+eps) < 1
  std::uint64_t seed = 0;
  std::int64_t min_period = 16;       // guard for the asymptotic regime
  std::int64_t verify_horizon = 0;    // steps checked before a margin is accepted
  int margin_attempts = 4;            // eps, eps/2, eps/4, ...
};

// Task probabilities (1+eps')/v_k rounded up on a 2^-24 grid, padded with
// filler symbols so every bucket is big. Index k < n is task k+1.
Dist dense_distribution(const PinwheelInstance& inst, const Ratio& eps_prime);

// Schedule generated from an eps-QR stream. Output starts right after the
// first occurrence of the last task to appear; every step is verified and
// a violation throws ContractError.
class PinwheelStream : public SymbolStream {
 public:
  PinwheelStream(const PinwheelInstance& inst, const Ratio& eps_prime, std::uint64_t seed);

  Symbol next() override;
  std::size_t alphabet_size() const override { return inst_.size() + 1; }
  const Ratio& eps_prime() const { return eps_prime_; }
  std::int64_t trimmed() const { return trimmed_; }
  const EpsQrStream& source() const { return *src_; }

 private:
  PinwheelInstance inst_;
  Ratio eps_prime_;
  std::unique_ptr<EpsQrStream> src_;
  ScheduleVerifier verifier_;
  std::int64_t trimmed_ = 0;
};

// Picks the first margin eps/2^a whose stream passes verify_horizon steps
// and returns a fresh stream with that margin.
std::unique_ptr<PinwheelStream> generate_dense(const PinwheelInstance& inst, const DenseOptions& opt);

}  // namespace quasireg
