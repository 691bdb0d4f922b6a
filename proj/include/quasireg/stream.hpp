#pragma once

#include <memory>

#include "quasireg/dist.hpp"

namespace quasireg {

// Infinite symbol generator. Every implementation is deterministic given its
// construction arguments.
class SymbolStream {
 public:
  virtual ~SymbolStream() = default;
  virtual Symbol next() = 0;
  virtual std::size_t alphabet_size() const = 0;
};

Sequence take(SymbolStream& s, std::size_t n);

}  // namespace quasireg
