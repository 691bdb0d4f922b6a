#include "quasireg/uniform.hpp"

#include <queue>
#include <string>

#include "quasireg/errors.hpp"

namespace quasireg {

namespace {

struct Node {
  std::int64_t weight;
  bool starred;
  Symbol symbol;  // leaves only
  int left = -1;
  int right = -1;
};

void fill(const std::vector<Node>& nodes, int id, int depth, std::int64_t residue,
          std::int64_t len, Sequence& out) {
  const Node& nd = nodes[static_cast<std::size_t>(id)];
  if (nd.left < 0) {
    const std::int64_t step = std::int64_t{1} << depth;
    for (std::int64_t x = residue; x < len; x += step) out[static_cast<std::size_t>(x)] = nd.symbol;
    return;
  }
  // The first step of the path is the least significant bit of the position.
  fill(nodes, nd.left, depth + 1, residue, len, out);
  fill(nodes, nd.right, depth + 1, residue + (std::int64_t{1} << depth), len, out);
}

}  // namespace

Block huffman_uniform(const Frame& f, const PBA& p) {
  if (!is_pba(f, p.dist.probs())) throw PreconditionError("huffman_uniform: not a PBA of the frame");
  const std::int64_t L = f.block_len();
  std::vector<Node> nodes;
  for (Symbol s = 0; s < f.size(); ++s) {
    const Ratio w = p.dist[s] * Ratio(L);
    if (!w.is_integer() || w.num() <= 0) {
      throw PreconditionError("huffman_uniform: probability not a positive multiple of 2^-M");
    }
    if (s != p.irr) {
      nodes.push_back({w.num(), false, s});
      continue;
    }
    for (std::int64_t bit = std::int64_t{1} << 62; bit > 0; bit >>= 1) {
      if (w.num() & bit) nodes.push_back({bit, true, s});
    }
  }
  // Order: smaller weight, then starred, then creation order.
  auto later = [&nodes](int a, int b) {
    const Node& x = nodes[static_cast<std::size_t>(a)];
    const Node& y = nodes[static_cast<std::size_t>(b)];
    if (x.weight != y.weight) return x.weight > y.weight;
    if (x.starred != y.starred) return !x.starred;
    return a > b;
  };
  std::priority_queue<int, std::vector<int>, decltype(later)> pq(later);
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) pq.push(i);
  while (pq.size() > 1) {
    const int a = pq.top();
    pq.pop();
    const int b = pq.top();
    pq.pop();
    const Node& x = nodes[static_cast<std::size_t>(a)];
    const Node& y = nodes[static_cast<std::size_t>(b)];
    nodes.push_back({x.weight + y.weight, x.starred || y.starred, kNoSymbol, a, b});
    pq.push(static_cast<int>(nodes.size()) - 1);
  }
  Sequence out(static_cast<std::size_t>(L), kNoSymbol);
  fill(nodes, pq.top(), 0, 0, L, out);
  Block b = Block::dense(out);
  if (!verify_uniform(b, f, p.dist)) throw ContractError("huffman_uniform: output is not uniform");
  return b;
}

Dist block_density(const Block& s) {
  std::vector<std::int64_t> counts;
  for (Symbol c : s.chars()) {
    if (c >= counts.size()) counts.resize(static_cast<std::size_t>(c) + 1, 0);
    ++counts[c];
  }
  std::vector<Ratio> probs;
  for (auto c : counts) probs.emplace_back(c, static_cast<std::int64_t>(s.size()));
  return Dist::unchecked(std::move(probs));
}

}  // namespace quasireg
