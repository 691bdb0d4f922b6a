#include "quasireg/epsqr.hpp"

#include <cmath>
#include <string>

#include "quasireg/errors.hpp"

namespace quasireg {

namespace {

void check_eps(const Ratio& eps) {
  if (eps <= Ratio(0) || eps >= Ratio(1)) throw PreconditionError("eps must lie in (0,1)");
}

Ratio eps_prime_of(const Ratio& eps) { return eps * eps / Ratio(1000); }

}  // namespace

Profile parse_profile(const std::string& s) {
  if (s == "desk") return Profile::Desk;
  if (s == "theory") return Profile::Theory;
  throw PreconditionError("unknown profile '" + s + "' (expected desk or theory)");
}

EpsQrKnobs desk_knobs(const Dist& p, const Ratio& eps, std::uint64_t seed) {
  check_eps(eps);
  EpsQrKnobs k;
  k.profile = Profile::Desk;
  k.eps = eps;
  k.delta_exact = p.max_prob() * Ratio(2);
  k.delta = static_cast<long double>(k.delta_exact->to_double());
  k.N = 64;
  k.eps_prime = eps_prime_of(eps);
  k.c_prime = (Ratio(10) / eps).ceil();
  k.seed = seed;
  return k;
}

EpsQrKnobs theory_knobs(const Ratio& eps, std::uint64_t seed) {
  check_eps(eps);
  EpsQrKnobs k;
  k.profile = Profile::Theory;
  k.eps = eps;
  const long double e = static_cast<long double>(eps.to_double());
  k.delta = std::pow(e, 6.0L) / 1e20L;
  k.N = 1e16L / std::pow(e, 4.0L);
  k.eps_prime = eps_prime_of(eps);
  k.c_prime = (Ratio(10) / eps).ceil();
  k.seed = seed;
  return k;
}

BucketPartition bucketize(const Dist& p, const EpsQrKnobs& k) {
  BucketPartition part;
  part.mass_small = 0;
  std::vector<std::pair<int, Symbol>> idx;
  for (Symbol s = 0; s < p.size(); ++s) {
    int i = 1;
    if (k.delta_exact) {
      Ratio bound = *k.delta_exact / Ratio(2);
      while (!(p[s] > bound)) {
        bound /= Ratio(2);
        ++i;
      }
    } else {
      long double bound = k.delta / 2;
      const auto v = static_cast<long double>(p[s].to_double());
      while (!(v > bound)) {
        bound /= 2;
        ++i;
      }
    }
    idx.emplace_back(i, s);
  }
  std::sort(idx.begin(), idx.end());
  for (const auto& [i, s] : idx) {
    if (part.buckets.empty() || part.buckets.back().index != i) {
      part.buckets.push_back({i, {}, Ratio(0), false});
    }
    part.buckets.back().members.push_back(s);
    part.buckets.back().mass += p[s];
  }
  for (auto& b : part.buckets) {
    b.big = static_cast<long double>(b.members.size()) > k.N;
    if (!b.big) part.mass_small += b.mass;
  }
  return part;
}

BlockColoringParams bucket_params(const EpsQrKnobs& k, std::size_t n, std::size_t bucket_index) {
  const std::uint64_t seed = k.seed * 1000003ULL + bucket_index;
  if (k.profile == Profile::Desk) return desk_block_params(n, seed);
  BlockColoringParams bp;
  const auto nn = static_cast<std::int64_t>(n);
  bp.M = checked_narrow(static_cast<__int128>(nn) * nn * nn * nn);
  // sqrt(2 log n / n^7), rounded down to a rational with a 2^40 denominator.
  const long double d = std::sqrt(2.0L * std::log(static_cast<long double>(n)) /
                                  std::pow(static_cast<long double>(n), 7.0L));
  const std::int64_t den = std::int64_t{1} << 40;
  bp.delta_match = Ratio(std::max<std::int64_t>(1, static_cast<std::int64_t>(d * den)), den);
  bp.seed = seed;
  return bp;
}

EpsQrStream::EpsQrStream(Dist p, EpsQrKnobs knobs) : p_(std::move(p)), knobs_(std::move(knobs)) {
  if (static_cast<long double>(p_.max_prob().to_double()) >= knobs_.delta) {
    throw PreconditionError("eps-QR: largest probability " + p_.max_prob().str() +
                            " is not below delta for this profile");
  }
  part_ = bucketize(p_, knobs_);
  for (const auto& b : part_.buckets) {
    if (b.big) {
      big_.push_back(&b);
    } else {
      small_symbols_.insert(small_symbols_.end(), b.members.begin(), b.members.end());
    }
  }
  if (big_.empty()) throw PreconditionError("eps-QR: no bucket exceeds the size threshold N");
  if (!(knobs_.c_prime > 1 && Ratio(knobs_.c_prime) * knobs_.eps_prime * Ratio(10) < Ratio(1))) {
    throw PreconditionError("eps-QR: c' must satisfy 1 < c' < 1/(10 eps')");
  }
  if (!small_symbols_.empty()) {
    if (part_.mass_small >= knobs_.eps_prime) {
      throw PreconditionError("eps-QR: small buckets carry mass " + part_.mass_small.str() +
                              ", not below eps' = " + knobs_.eps_prime.str());
    }
    std::vector<Ratio> outer{Ratio(1) - part_.mass_small};
    for (Symbol s : small_symbols_) outer.push_back(p_[s]);
    outer_ = std::make_unique<ExpandedSparseColoring>(Dist(outer), knobs_.eps_prime, knobs_.c_prime);
  }
  if (big_.size() > 1) {
    std::vector<Ratio> w;
    Ratio total = 0;
    for (const Bucket* b : big_) total += b->mass;
    for (const Bucket* b : big_) w.push_back(b->mass / total);
    coarse_ = std::make_unique<LowDiscState>(Dist(w));
  }
  for (std::size_t i = 0; i < big_.size(); ++i) {
    std::vector<Ratio> q;
    for (Symbol s : big_[i]->members) q.push_back(p_[s] / big_[i]->mass);
    blocks_.push_back(std::make_unique<BlockColoring>(
        Dist(q), bucket_params(knobs_, q.size(), static_cast<std::size_t>(big_[i]->index))));
  }
}

Symbol EpsQrStream::next() {
  if (outer_) {
    const Symbol c = outer_->next();
    if (c != 0) return small_symbols_[c - 1];
  }
  const std::size_t b = coarse_ ? coarse_->next() : 0;
  return big_[b]->members[blocks_[b]->next()];
}

}  // namespace quasireg
