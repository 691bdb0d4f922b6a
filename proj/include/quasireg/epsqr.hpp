#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quasireg/block_coloring.hpp"
#include "quasireg/coloring.hpp"
#include "quasireg/dist.hpp"
#include "quasireg/stream.hpp"

namespace quasireg {

enum class Profile { Desk, Theory };

Profile parse_profile(const std::string& s);

struct EpsQrKnobs {
  Profile profile = Profile::Desk;
  Ratio eps;
  long double delta = 0;             // every p_s must be below this
  std::optional<Ratio> delta_exact;  // used for bucketing when representable
  long double N = 0;                 // buckets with more than N symbols are big
  Ratio eps_prime;                   // tolerance of the outer sparse layer
  std::int64_t c_prime = 0;          // expansion factor of the outer layer
  std::uint64_t seed = 0;
};

// delta = 2 max p, N = 64, eps' = eps^2/1000, c' = ceil(10/eps).
EpsQrKnobs desk_knobs(const Dist& p, const Ratio& eps, std::uint64_t seed);
// delta = eps^6/10^20, N = 10^16/eps^4; only inputs with every p below delta qualify.
EpsQrKnobs theory_knobs(const Ratio& eps, std::uint64_t seed);

struct Bucket {
  int index = 0;               // i with delta/2^i < p <= delta/2^(i-1)
  std::vector<Symbol> members;
  Ratio mass;
  bool big = false;
};

struct BucketPartition {
  std::vector<Bucket> buckets;  // ascending index, non-empty only
  Ratio mass_small;             // p_J
};

BucketPartition bucketize(const Dist& p, const EpsQrKnobs& k);

BlockColoringParams bucket_params(const EpsQrKnobs& k, std::size_t n, std::size_t bucket_index);

// Sequence with density p and per-symbol QR close to 1: big buckets get
// matching-based block colorings, interleaved by a low-discrepancy coloring
// over bucket masses, and substituted into the major color of an expanded
// sparse coloring that carries the symbols of the small buckets.
class EpsQrStream : public SymbolStream {
 public:
  EpsQrStream(Dist p, EpsQrKnobs knobs);

  Symbol next() override;
  std::size_t alphabet_size() const override { return p_.size(); }

  const BucketPartition& partition() const { return part_; }
  const EpsQrKnobs& knobs() const { return knobs_; }
  // One per big bucket, in partition order.
  const std::vector<std::unique_ptr<BlockColoring>>& block_colorings() const { return blocks_; }

 private:
  Dist p_;
  EpsQrKnobs knobs_;
  BucketPartition part_;
  std::vector<const Bucket*> big_;
  std::vector<Symbol> small_symbols_;  // outer color c >= 1 -> symbol
  std::unique_ptr<ExpandedSparseColoring> outer_;
  std::unique_ptr<LowDiscState> coarse_;
  std::vector<std::unique_ptr<BlockColoring>> blocks_;
};

}  // namespace quasireg
