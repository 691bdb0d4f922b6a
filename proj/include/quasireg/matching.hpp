#pragma once

#include <cstddef>
#include <vector>

namespace quasireg {

// Maximum bipartite matching by Hopcroft-Karp. adj[u] lists right vertices
// of left vertex u. Returns match_left with -1 for unmatched vertices.
std::vector<int> hopcroft_karp(const std::vector<std::vector<int>>& adj, std::size_t right_size);

std::size_t matching_size(const std::vector<int>& match_left);

}  // namespace quasireg
