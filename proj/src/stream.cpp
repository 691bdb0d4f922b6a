#include "quasireg/stream.hpp"

namespace quasireg {

Sequence take(SymbolStream& s, std::size_t n) {
  Sequence out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(s.next());
  return out;
}

}  // namespace quasireg
