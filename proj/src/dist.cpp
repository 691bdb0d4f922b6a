#include "quasireg/dist.hpp"

#include <string>

#include "quasireg/errors.hpp"

namespace quasireg {

Dist::Dist(std::vector<Ratio> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw PreconditionError("distribution has empty support");
  if (probs_.size() >= kNoSymbol) throw PreconditionError("alphabet too large");
  Ratio sum = 0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (probs_[i] <= Ratio(0) || probs_[i] > Ratio(1)) {
      throw PreconditionError("probability of symbol " + std::to_string(i) + " is " +
                              probs_[i].str() + ", outside (0,1]");
    }
    sum += probs_[i];
  }
  if (sum != Ratio(1)) throw PreconditionError("probabilities sum to " + sum.str() + ", not 1");
}

Dist Dist::unchecked(std::vector<Ratio> probs) {
  Dist d;
  d.probs_ = std::move(probs);
  return d;
}

Ratio Dist::max_prob() const {
  Ratio m = 0;
  for (const auto& p : probs_) m = std::max(m, p);
  return m;
}

Ratio Dist::total() const {
  Ratio s = 0;
  for (const auto& p : probs_) s += p;
  return s;
}

}  // namespace quasireg
