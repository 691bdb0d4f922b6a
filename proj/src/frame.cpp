#include "quasireg/frame.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>

#include "quasireg/errors.hpp"

namespace quasireg {

namespace {

int exponent_of(const Ratio& p) {
  // Smallest n >= 1 with 2^-n <= p.
  for (int n = 1; n < 62; ++n) {
    if (Ratio(1, std::int64_t{1} << n) <= p) return n;
  }
  throw PreconditionError("probability " + p.str() + " too small for a dyadic frame");
}

Ratio sum_of(const std::vector<Ratio>& v) {
  Ratio s = 0;
  for (const auto& x : v) s += x;
  return s;
}

// Potential from the connectivity argument: (weighted distance, support size).
struct Potential {
  Ratio d;
  std::size_t sigma;
  friend bool operator<(const Potential& a, const Potential& b) {
    return a.d != b.d ? a.d < b.d : a.sigma < b.sigma;
  }
};

Potential potential(const PBA& a, const PBA& b) {
  Potential out{0, 0};
  for (Symbol s = 0; s < a.dist.size(); ++s) {
    const bool irr = s == a.irr || s == b.irr;
    if (!irr) out.d += (a.dist[s] - b.dist[s]).abs();
    if (irr || a.dist[s] != b.dist[s]) ++out.sigma;
  }
  return out;
}

}  // namespace

Frame make_frame(std::vector<int> n, int max_M) {
  if (n.empty()) throw PreconditionError("frame over empty alphabet");
  Frame f;
  f.n = std::move(n);
  for (int e : f.n) {
    if (e < 1) throw PreconditionError("frame exponents must be positive");
  }
  f.M = *std::max_element(f.n.begin(), f.n.end()) + 5;
  if (f.M > max_M) {
    throw PreconditionError("block exponent " + std::to_string(f.M) + " exceeds cap " +
                            std::to_string(max_M) + " (smallest probability too small)");
  }
  return f;
}

Frame frame_of(const Dist& p, int max_M) {
  std::vector<int> n;
  for (Symbol s = 0; s < p.size(); ++s) {
    if (p[s] <= Ratio(0) || p[s] > Ratio(1)) {
      throw PreconditionError("frame_of: probability " + p[s].str() + " outside (0,1]");
    }
    n.push_back(exponent_of(p[s]));
  }
  return make_frame(std::move(n), max_M);
}

bool in_box(const Frame& f, const std::vector<Ratio>& p) {
  if (p.size() != f.size()) return false;
  for (Symbol s = 0; s < p.size(); ++s) {
    if (p[s] < f.lo(s) || p[s] > f.hi(s)) return false;
  }
  return true;
}

bool is_endpoint(const Frame& f, Symbol s, const Ratio& v) { return v == f.lo(s) || v == f.hi(s); }

bool is_pba(const Frame& f, const std::vector<Ratio>& p) {
  if (!in_box(f, p) || sum_of(p) != Ratio(1)) return false;
  int interior = 0;
  for (Symbol s = 0; s < p.size(); ++s) {
    if (!is_endpoint(f, s, p[s])) ++interior;
  }
  return interior <= 1;
}

PBA make_pba(const Frame& f, const std::vector<Ratio>& p) {
  if (!is_pba(f, p)) throw PreconditionError("not a pseudo-binary approximation of the frame");
  PBA out;
  out.dist = Dist::unchecked(p);
  for (Symbol s = 0; s < p.size(); ++s) {
    if (!is_endpoint(f, s, p[s])) out.irr = s;
  }
  return out;
}

std::vector<PBA> pba_enumerate(const Frame& f) {
  const std::size_t k = f.size();
  if (k > 16 || (std::uint64_t{1} << k) * (k + 1) > (std::uint64_t{1} << 20)) {
    throw PreconditionError("pba_enumerate: alphabet too large to enumerate");
  }
  std::vector<PBA> out;
  std::vector<Ratio> v(k);
  for (std::size_t irr = 0; irr <= k; ++irr) {  // irr == k means none
    const std::size_t free_bits = irr == k ? k : k - 1;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_bits); ++mask) {
      std::size_t bit = 0;
      Ratio sum = 0;
      for (Symbol s = 0; s < k; ++s) {
        if (s == irr) continue;
        v[s] = (mask >> bit++) & 1 ? f.hi(s) : f.lo(s);
        sum += v[s];
      }
      if (irr == k) {
        if (sum == Ratio(1)) out.push_back(make_pba(f, v));
        continue;
      }
      const Ratio rest = Ratio(1) - sum;
      if (rest > f.lo(irr) && rest < f.hi(irr)) {
        v[irr] = rest;
        out.push_back(make_pba(f, v));
      }
    }
  }
  return out;
}

Decomposition pba_decompose_ray(const Dist& p, const Frame& f) {
  if (!in_box(f, p.probs()) || p.total() != Ratio(1)) {
    throw PreconditionError("pba_decompose: distribution outside the frame box");
  }
  Decomposition out;
  std::vector<Ratio> cur = p.probs();
  Ratio weight = 1;  // mass still carried by `cur`
  while (!is_pba(f, cur)) {
    // A vertex of the smallest face through cur: pin the interior coordinates
    // to their lower ends, then raise them one at a time until the sum is 1.
    std::vector<Ratio> v = cur;
    Ratio sum = 0;
    std::vector<Symbol> interior;
    for (Symbol s = 0; s < cur.size(); ++s) {
      if (!is_endpoint(f, s, cur[s])) {
        interior.push_back(s);
        v[s] = f.lo(s);
      }
      sum += v[s];
    }
    for (Symbol s : interior) {
      const Ratio room = f.hi(s) - f.lo(s);
      const Ratio need = Ratio(1) - sum;
      const Ratio step = std::min(room, need);
      v[s] += step;
      sum += step;
    }
    // Shoot from v through cur to the boundary of the face: cur2 = cur + t(cur - v).
    bool have_t = false;
    Ratio t = 0;
    for (Symbol s = 0; s < cur.size(); ++s) {
      const Ratio dir = cur[s] - v[s];
      if (dir == Ratio(0)) continue;
      const Ratio lim = dir > Ratio(0) ? (f.hi(s) - cur[s]) / dir : (cur[s] - f.lo(s)) / -dir;
      if (!have_t || lim < t) {
        t = lim;
        have_t = true;
      }
    }
    if (!have_t || t <= Ratio(0)) throw ContractError("pba_decompose: degenerate ray");
    std::vector<Ratio> next(cur.size());
    for (Symbol s = 0; s < cur.size(); ++s) next[s] = cur[s] + t * (cur[s] - v[s]);
    // cur = (t/(1+t)) v + (1/(1+t)) next
    out.terms.push_back({weight * t / (Ratio(1) + t), make_pba(f, v)});
    weight = weight / (Ratio(1) + t);
    cur = std::move(next);
  }
  out.terms.push_back({weight, make_pba(f, cur)});
  return out;
}

namespace {

// Solves sum_i alpha_i v_i = p exactly; nullopt unless the solution is unique
// and strictly positive.
std::optional<std::vector<Ratio>> solve_weights(const std::vector<const PBA*>& vs, const Dist& p) {
  const std::size_t m = vs.size();
  const std::size_t rows = p.size() + 1;
  std::vector<std::vector<Ratio>> a(rows, std::vector<Ratio>(m + 1));
  for (std::size_t r = 0; r < p.size(); ++r) {
    for (std::size_t c = 0; c < m; ++c) a[r][c] = vs[c]->dist[static_cast<Symbol>(r)];
    a[r][m] = p[static_cast<Symbol>(r)];
  }
  for (std::size_t c = 0; c <= m; ++c) a[p.size()][c] = 1;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t piv = row;
    while (piv < rows && a[piv][c] == Ratio(0)) ++piv;
    if (piv == rows) return std::nullopt;  // dependent columns
    std::swap(a[piv], a[row]);
    const Ratio inv = Ratio(1) / a[row][c];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || a[r][c] == Ratio(0)) continue;
      const Ratio k = a[r][c];
      for (std::size_t cc = c; cc <= m; ++cc) a[r][cc] -= k * a[row][cc];
    }
    ++row;
  }
  for (std::size_t r = row; r < rows; ++r) {
    if (a[r][m] != Ratio(0)) return std::nullopt;  // inconsistent
  }
  std::vector<Ratio> alpha(m);
  for (std::size_t c = 0; c < m; ++c) {
    alpha[c] = a[c][m];
    if (alpha[c] <= Ratio(0)) return std::nullopt;
  }
  return alpha;
}

// Relative per-round surplus of a cyclic term order: every term contributes
// about half a block beyond its share, every intermediate vertex on the walk
// to the next term a full block, and each hop roughly half a filler block.
double surplus_score(const std::vector<const PBA*>& order, const Dist& p, const Frame& f,
                     std::map<std::pair<const PBA*, const PBA*>, std::vector<PBA>>& paths) {
  const std::size_t k = p.size();
  std::vector<double> bias(k, 0.0);
  auto add = [&](const PBA& v, double w) {
    for (Symbol s = 0; s < k; ++s) bias[s] += w * (v.dist[s] - p[s]).to_double();
  };
  for (std::size_t i = 0; i < order.size(); ++i) {
    const PBA* a = order[i];
    const PBA* b = order[(i + 1) % order.size()];
    add(*a, 0.5);
    if (a == b) continue;
    auto key = std::make_pair(a, b);
    auto it = paths.find(key);
    if (it == paths.end()) it = paths.emplace(key, pba_path(*a, *b, f)).first;
    const PBA* prev = a;
    for (std::size_t h = 0; h < it->second.size(); ++h) {
      const PBA& u = it->second[h];
      add(*prev, 0.25);
      add(u, 0.25);
      if (h + 1 < it->second.size()) add(u, 1.0);
      prev = &u;
    }
  }
  double worst = 0.0;
  for (Symbol s = 0; s < k; ++s) worst = std::max(worst, std::abs(bias[s]) / p[s].to_double());
  return worst;
}

}  // namespace

Decomposition pba_decompose(const Dist& p, const Frame& f) {
  if (!in_box(f, p.probs()) || p.total() != Ratio(1)) {
    throw PreconditionError("pba_decompose: distribution outside the frame box");
  }
  if (is_pba(f, p.probs())) return {{{Ratio(1), make_pba(f, p.probs())}}};
  std::vector<PBA> verts;
  try {
    verts = pba_enumerate(f);
  } catch (const PreconditionError&) {
    return pba_decompose_ray(p, f);
  }
  const std::size_t k = p.size();
  const std::size_t n = verts.size();
  constexpr std::uint64_t kSubsetCap = 200000;
  // Count subsets of size <= k to decide whether exhaustive search is affordable.
  std::uint64_t total = 0, binom = 1;
  for (std::size_t m = 1; m <= std::min(k, n); ++m) {
    binom = binom * (n - m + 1) / m;
    total += binom;
  }
  if (total > kSubsetCap) return pba_decompose_ray(p, f);

  std::map<std::pair<const PBA*, const PBA*>, std::vector<PBA>> paths;
  std::optional<Decomposition> best;
  double best_score = 0.0;
  std::vector<std::size_t> idx;
  for (std::size_t m = 2; m <= std::min(k, n); ++m) {
    idx.resize(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = i;
    while (true) {
      std::vector<const PBA*> vs;
      for (auto i : idx) vs.push_back(&verts[i]);
      if (auto alpha = solve_weights(vs, p)) {
        // Cyclic orders with the first vertex fixed.
        std::vector<std::size_t> perm(m);
        for (std::size_t i = 0; i < m; ++i) perm[i] = i;
        do {
          std::vector<const PBA*> order;
          for (auto i : perm) order.push_back(vs[i]);
          const double score = surplus_score(order, p, f, paths);
          if (!best || score < best_score - 1e-12) {
            Decomposition d;
            for (auto i : perm) d.terms.push_back({(*alpha)[i], *vs[i]});
            best = std::move(d);
            best_score = score;
          }
        } while (std::next_permutation(perm.begin() + 1, perm.end()));
      }
      // Next combination.
      std::size_t pos = m;
      while (pos > 0 && idx[pos - 1] == n - m + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < m; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  if (!best) return pba_decompose_ray(p, f);
  return *best;
}

bool pba_adjacent(const PBA& a, const PBA& b) {
  std::vector<Symbol> diff;
  for (Symbol s = 0; s < a.dist.size(); ++s) {
    if (a.dist[s] != b.dist[s]) diff.push_back(s);
  }
  if (diff.size() != 2) return false;
  auto ok = [&](Symbol irr) { return irr == kNoSymbol || irr == diff[0] || irr == diff[1]; };
  return ok(a.irr) && ok(b.irr);
}

PBA pba_step(const PBA& p, const PBA& target, const Frame& f) {
  if (p == target) throw PreconditionError("pba_step: already at target");
  if (pba_adjacent(p, target)) return target;
  const std::size_t k = f.size();
  std::vector<Ratio> fv(k);
  for (Symbol s = 0; s < k; ++s) {
    if (p.dist[s] > target.dist[s]) {
      fv[s] = f.lo(s);
    } else if (p.dist[s] < target.dist[s]) {
      fv[s] = f.hi(s);
    } else if (s == p.irr && s == target.irr) {
      fv[s] = f.hi(s);
    } else {
      fv[s] = p.dist[s];
    }
  }
  std::vector<Symbol> A, B;
  for (Symbol s = 0; s < k; ++s) {
    if (fv[s] < p.dist[s]) A.push_back(s);
    if (fv[s] > p.dist[s]) B.push_back(s);
  }
  if (A.empty() || B.empty()) throw ContractError("pba_step: empty move set");
  Symbol alpha = p.irr;
  if (alpha == kNoSymbol) alpha = std::min(A.front(), B.front());
  const bool down = std::find(A.begin(), A.end(), alpha) != A.end();
  const std::vector<Symbol>& other = down ? B : A;
  Symbol beta = kNoSymbol;
  if (other.size() == 1 && other.front() == target.irr) {
    beta = target.irr;
  } else {
    for (Symbol s : other) {
      if (s != target.irr) {
        beta = s;
        break;
      }
    }
  }
  if (beta == kNoSymbol) throw ContractError("pba_step: no partner coordinate");
  std::vector<Ratio> next = p.dist.probs();
  if (down) {
    const Ratio eps = std::min(p.dist[alpha] - fv[alpha], fv[beta] - p.dist[beta]);
    next[alpha] -= eps;
    next[beta] += eps;
  } else {
    const Ratio eps = std::min(fv[alpha] - p.dist[alpha], p.dist[beta] - fv[beta]);
    next[alpha] += eps;
    next[beta] -= eps;
  }
  PBA out = make_pba(f, next);
  if (!pba_adjacent(p, out) || !(potential(out, target) < potential(p, target))) {
    throw ContractError("pba_step: potential did not decrease");
  }
  return out;
}

std::vector<PBA> pba_path(const PBA& p, const PBA& target, const Frame& f) {
  std::vector<PBA> path;
  PBA cur = p;
  while (!(cur == target)) {
    cur = pba_step(cur, target, f);
    path.push_back(cur);
    if (path.size() > (std::size_t{1} << 20)) throw ContractError("pba_path: no progress");
  }
  return path;
}

}  // namespace quasireg
