#include "quasireg/coloring.hpp"

#include <string>

#include "quasireg/errors.hpp"

namespace quasireg {

IncreasingFn compose(const IncreasingFn& f, const IncreasingFn& g, std::int64_t k, std::int64_t l) {
  if (k < 1 || l < 1) throw PreconditionError("compose: k and l must be positive");
  for (std::size_t n = 1; n < g.size(); ++n) {
    if (l * (g(n + 1) - g(n)) < k) {
      throw PreconditionError("compose: gap of g at index " + std::to_string(n) +
                              " is below k/l");
    }
  }
  std::vector<std::int64_t> out;
  for (std::size_t n = 1; n <= g.size(); ++n) {
    const std::int64_t gn = g(n);
    if (gn < 1 || static_cast<std::size_t>(gn) > f.size()) break;
    out.push_back(f(static_cast<std::size_t>(gn)));
  }
  return IncreasingFn(std::move(out));
}

SparseColoring::SparseColoring(Dist p, Ratio eps) : p_(std::move(p)), eps_(eps) {
  if (eps_ <= Ratio(0) || eps_ >= Ratio(1, 10)) {
    throw PreconditionError("sparse coloring: eps must lie in (0, 1/10)");
  }
  if (p_[0] <= Ratio(1) - eps_) throw PreconditionError("sparse coloring: p_0 must exceed 1 - eps");
  counts_.assign(p_.size(), 0);
  for (Symbol c = 1; c < p_.size(); ++c) pending_.push(job_for(c));
}

std::pair<std::int64_t, std::int64_t> SparseColoring::window(const Ratio& p_i, const Ratio& eps,
                                                             std::int64_t n) {
  const Ratio half = eps / Ratio(2);
  return {((Ratio(n) - half) / p_i).floor(), ((Ratio(n) + half) / p_i).ceil()};
}

SparseColoring::Job SparseColoring::job_for(Symbol c) const {
  const auto [lo, hi] = window(p_[c], eps_, counts_[c] + 1);
  return Job{lo, hi, c};
}

Symbol SparseColoring::next() {
  const std::int64_t y = ++y_;
  while (!pending_.empty() && pending_.top().release <= y) {
    ready_.push(pending_.top());
    pending_.pop();
  }
  if (ready_.empty()) return 0;
  const Job j = ready_.top();
  if (j.deadline < y) {
    throw ContractError("sparse coloring: deadline miss for color " + std::to_string(j.color) +
                        " at position " + std::to_string(y));
  }
  ready_.pop();
  ++counts_[j.color];
  pending_.push(job_for(j.color));
  return j.color;
}

Dist ExpandedSparseColoring::expand(const Dist& p, std::int64_t c) {
  std::vector<Ratio> q(p.size());
  Ratio minor = 0;
  for (Symbol s = 1; s < p.size(); ++s) {
    q[s] = p[s] * Ratio(c);
    minor += q[s];
  }
  q[0] = Ratio(1) - minor;
  return Dist::unchecked(std::move(q));
}

ExpandedSparseColoring::ExpandedSparseColoring(const Dist& p, Ratio eps, std::int64_t c)
    : inner_((c > 1 && Ratio(c) * eps * Ratio(10) < Ratio(1))
                 ? expand(p, c)
                 : throw PreconditionError("expanded sparse: need 1 < c < 1/(10 eps)"),
             eps * Ratio(c)),
      c_(c) {}

Symbol ExpandedSparseColoring::next() {
  ++m_;
  if (m_ % c_ != 0) return 0;
  return inner_.next();
}

}  // namespace quasireg
