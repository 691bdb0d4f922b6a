#include "quasireg/lowdisc.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "quasireg/errors.hpp"

namespace quasireg {

LowDiscState::LowDiscState(Dist target) : target_(std::move(target)) {
  if (target_.size() == 0) throw PreconditionError("lowdisc: empty support");
  for (Symbol s = 0; s < target_.size(); ++s) {
    if (target_[s] <= Ratio(0)) throw PreconditionError("lowdisc: zero-probability symbol");
  }
  counts_.assign(target_.size(), 0);
  std::vector<Symbol> order(target_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Symbol a, Symbol b) { return target_[a] > target_[b]; });
  rank_.resize(order.size());
  for (std::uint32_t r = 0; r < order.size(); ++r) rank_[order[r]] = r;
  for (Symbol s = 0; s < target_.size(); ++s) pending_.push(job_for(s));
}

LowDiscState::Job LowDiscState::job_for(Symbol s) const {
  const Ratio& p = target_[s];
  const std::int64_t c = counts_[s];
  // floor(c/p) = floor(c*den/num), ceil((c+1)/p) = ceil((c+1)*den/num)
  return Job{checked_narrow(floor_div(static_cast<__int128>(c) * p.den(), p.num())),
             checked_narrow(ceil_div(static_cast<__int128>(c + 1) * p.den(), p.num())), rank_[s],
             s};
}

Symbol LowDiscState::next() {
  const std::int64_t t = ++n_;
  while (!pending_.empty() && pending_.top().release < t) {
    ready_.push(pending_.top());
    pending_.pop();
  }
  if (ready_.empty()) throw ContractError("lowdisc: no released job at position " + std::to_string(t));
  const Job j = ready_.top();
  ready_.pop();
  if (j.deadline < t) {
    throw ContractError("lowdisc: deadline miss for symbol " + std::to_string(j.symbol) +
                        " at position " + std::to_string(t));
  }
  ++counts_[j.symbol];
  const Job nj = job_for(j.symbol);
  if (nj.release < t + 1) {
    ready_.push(nj);
  } else {
    pending_.push(nj);
  }
  return j.symbol;
}

bool lowdisc_window_check(std::span<const Symbol> prefix, const Dist& p, std::int64_t M,
                          std::int64_t N) {
  if (M < 1 || N < 1 || M + N > static_cast<std::int64_t>(prefix.size()) + 1) {
    throw PreconditionError("lowdisc_window_check: window out of range");
  }
  std::vector<std::int64_t> counts(p.size(), 0);
  for (std::int64_t i = M; i < M + N; ++i) {
    const Symbol s = prefix[static_cast<std::size_t>(i - 1)];
    if (s >= p.size()) throw PreconditionError("lowdisc_window_check: unknown symbol");
    ++counts[s];
  }
  for (Symbol s = 0; s < p.size(); ++s) {
    const Ratio dev = (Ratio(counts[s]) - Ratio(N) * p[s]).abs();
    if (dev >= Ratio(2)) return false;
  }
  return true;
}

}  // namespace quasireg
