#pragma once

#include "quasireg/block.hpp"
#include "quasireg/frame.hpp"

namespace quasireg {

// Builds an (n,p)-uniform block of length 2^M from a Huffman tree over the
// dyadic weights p_s * 2^M. The irregular coordinate is split into distinct
// powers of two; those pieces are merged first among equal weights so that
// they end up inside one subtree.
Block huffman_uniform(const Frame& f, const PBA& p);

// Dyadic density of a dense block (counts / length).
Dist block_density(const Block& s);

}  // namespace quasireg
