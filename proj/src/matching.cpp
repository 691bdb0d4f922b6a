#include "quasireg/matching.hpp"

#include <limits>
#include <queue>

namespace quasireg {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

struct HK {
  const std::vector<std::vector<int>>& adj;
  std::vector<int> ml, mr, dist;

  bool bfs() {
    std::queue<int> q;
    bool found = false;
    for (std::size_t u = 0; u < adj.size(); ++u) {
      if (ml[u] < 0) {
        dist[u] = 0;
        q.push(static_cast<int>(u));
      } else {
        dist[u] = kInf;
      }
    }
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj[u]) {
        const int w = mr[v];
        if (w < 0) {
          found = true;
        } else if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  // Iterative augmenting search along the BFS layers.
  bool dfs(int root) {
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    std::vector<int> path_v;
    while (!stack.empty()) {
      auto& [u, k] = stack.back();
      if (k == adj[u].size()) {
        dist[u] = kInf;
        stack.pop_back();
        if (!path_v.empty()) path_v.pop_back();
        continue;
      }
      const int v = adj[u][k++];
      const int w = mr[v];
      if (w < 0) {
        path_v.push_back(v);
        for (std::size_t i = 0; i < stack.size(); ++i) {
          const int a = stack[i].first;
          ml[a] = path_v[i];
          mr[path_v[i]] = a;
        }
        return true;
      }
      if (dist[w] == dist[u] + 1) {
        path_v.push_back(v);
        stack.emplace_back(w, 0);
      }
    }
    return false;
  }
};

}  // namespace

std::vector<int> hopcroft_karp(const std::vector<std::vector<int>>& adj, std::size_t right_size) {
  HK hk{adj, std::vector<int>(adj.size(), -1), std::vector<int>(right_size, -1),
        std::vector<int>(adj.size(), kInf)};
  while (hk.bfs()) {
    for (std::size_t u = 0; u < adj.size(); ++u) {
      if (hk.ml[u] < 0) hk.dfs(static_cast<int>(u));
    }
  }
  return hk.ml;
}

std::size_t matching_size(const std::vector<int>& match_left) {
  std::size_t n = 0;
  for (int v : match_left) n += v >= 0 ? 1 : 0;
  return n;
}

}  // namespace quasireg
