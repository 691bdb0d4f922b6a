#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "quasireg/connect.hpp"
#include "quasireg/frame.hpp"
#include "quasireg/stream.hpp"

namespace quasireg {

struct TwoQrInfo {
  Frame frame;
  Decomposition decomposition;
  std::size_t connector_count = 0;  // distinct connections computed so far
  std::int64_t longest_connector = 0;  // in windows
  std::int64_t rounds = 0;
};

// Streams t_1 ◊ t_2 ◊ ... where round n visits every decomposition term i,
// repeating its uniform block floor(alpha_i n) + 1 times and walking to the
// next term through connecting strings. Each piece is emitted without its last
// window, which the next piece starts with.
class TwoQrStream : public SymbolStream {
 public:
  explicit TwoQrStream(Dist p, ConnectOptions opt = {});

  Symbol next() override;
  std::size_t alphabet_size() const override { return p_.size(); }
  const TwoQrInfo& info() const { return info_; }

 private:
  void refill();
  void emit_block(const Block& b, std::int64_t windows);
  void walk_to(std::size_t term);

  Dist p_;
  TwoQrInfo info_;
  std::unique_ptr<Connector> connector_;
  Block cur_;
  PBA cur_pba_;
  std::size_t term_ = 0;  // next term to visit
  std::int64_t round_ = 1;
  Sequence buf_;
  std::size_t pos_ = 0;
};

}  // namespace quasireg
