#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "quasireg/block.hpp"
#include "quasireg/frame.hpp"

namespace quasireg {

struct ConnectOptions {
  int k_max = 8;
  // Search nodes allowed per (candidate end block, k) pair.
  std::int64_t node_budget = 200000;
};

struct Connection {
  Block end;  // (n,p')-uniform block reached
  Block t;    // connecting string, k * 2^M long
};

// Finds s'' uniform for `target` and t with s ->_{n,t} s''. The densities of
// s and target must be equal or adjacent approximations.
Connection connect(const Block& s, const PBA& target, const Frame& f,
                   const ConnectOptions& opt = {});

// Memoising wrapper keyed on the content of s and the target.
class Connector {
 public:
  Connector(Frame f, ConnectOptions opt = {}) : f_(std::move(f)), opt_(opt) {}
  const Connection& operator()(const Block& s, const PBA& target);
  std::size_t cache_size() const { return cache_.size(); }

 private:
  Frame f_;
  ConnectOptions opt_;
  std::map<std::string, Connection> cache_;
};

}  // namespace quasireg
