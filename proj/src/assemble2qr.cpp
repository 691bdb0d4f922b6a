#include "quasireg/assemble2qr.hpp"

#include "quasireg/errors.hpp"
#include "quasireg/uniform.hpp"

namespace quasireg {

TwoQrStream::TwoQrStream(Dist p, ConnectOptions opt) : p_(std::move(p)) {
  if (p_.size() == 1) return;  // constant stream
  info_.frame = frame_of(p_);
  info_.decomposition = pba_decompose(p_, info_.frame);
  connector_ = std::make_unique<Connector>(info_.frame, opt);
  const auto& terms = info_.decomposition.terms;
  cur_pba_ = terms.back().pba;
  cur_ = huffman_uniform(info_.frame, cur_pba_);
  walk_to(0);
  buf_.clear();  // the walk into the first term is not part of the stream
}

void TwoQrStream::emit_block(const Block& b, std::int64_t windows) {
  const std::size_t n = static_cast<std::size_t>(windows * info_.frame.block_len());
  buf_.insert(buf_.end(), b.chars().begin(), b.chars().begin() + static_cast<std::ptrdiff_t>(n));
}

void TwoQrStream::walk_to(std::size_t term) {
  const PBA& target = info_.decomposition.terms[term].pba;
  std::vector<PBA> hops;
  if (cur_pba_ == target) {
    hops.push_back(target);
  } else {
    hops = pba_path(cur_pba_, target, info_.frame);
  }
  for (const auto& hop : hops) {
    const Connection& c = (*connector_)(cur_, hop);
    const std::int64_t w = max_window(c.t, info_.frame);
    info_.longest_connector = std::max(info_.longest_connector, w);
    emit_block(c.t, w - 1);
    cur_ = c.end;
    cur_pba_ = hop;
  }
  info_.connector_count = connector_->cache_size();
}

void TwoQrStream::refill() {
  buf_.clear();
  pos_ = 0;
  const auto& terms = info_.decomposition.terms;
  const Ratio& alpha = terms[term_].alpha;
  const std::int64_t r = (alpha * Ratio(round_)).floor() + 1;
  for (std::int64_t i = 0; i + 1 < r; ++i) emit_block(cur_, 1);
  term_ = (term_ + 1) % terms.size();
  if (term_ == 0) {
    ++round_;
    info_.rounds = round_ - 1;
  }
  walk_to(term_);
}

Symbol TwoQrStream::next() {
  if (p_.size() == 1) return 0;
  while (pos_ >= buf_.size()) refill();
  return buf_[pos_++];
}

}  // namespace quasireg
