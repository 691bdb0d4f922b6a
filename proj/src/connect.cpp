#include "quasireg/connect.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>

#include "quasireg/errors.hpp"
#include "quasireg/uniform.hpp"

namespace quasireg {

namespace {

// Fills the middle windows of t = s | ... | end so that every symbol keeps its
// gaps in [2^(n-1), 2^n]. Cells are assigned left to right; each symbol's next
// occurrence is a unit job with a release/deadline window, and an EDF pass over
// those jobs prunes states that can no longer be completed.
class MiddleSearch {
 public:
  MiddleSearch(const Frame& f, const Sequence& s, const Sequence& end, int k, std::int64_t budget)
      : f_(f), s_(s), end_(end), L_(f.block_len()), k_(k), budget_(budget) {}

  std::optional<Sequence> run() {
    const std::size_t m = f_.size();
    const std::int64_t total = k_ * L_;
    t_.assign(static_cast<std::size_t>(total), kNoSymbol);
    std::copy(s_.begin(), s_.end(), t_.begin());
    std::copy(end_.begin(), end_.end(), t_.begin() + (k_ - 1) * L_);
    last_.assign(m, -1);
    first_end_.assign(m, -1);
    for (std::int64_t x = 0; x < L_; ++x) last_[s_[static_cast<std::size_t>(x)]] = x;
    for (std::int64_t x = L_ - 1; x >= 0; --x) {
      first_end_[end_[static_cast<std::size_t>(x)]] = (k_ - 1) * L_ + x;
    }
    for (Symbol c = 0; c < m; ++c) {
      if (last_[c] < 0 || first_end_[c] < 0) return std::nullopt;
      if (first_end_[c] - last_[c] < f_.min_gap(c)) return std::nullopt;
    }
    const std::int64_t lo_cell = L_;
    const std::int64_t hi_cell = (k_ - 1) * L_;  // exclusive
    if (lo_cell == hi_cell) return closes() ? std::optional<Sequence>(t_) : std::nullopt;

    struct Level {
      std::int64_t x;
      std::vector<Symbol> cands;
      std::size_t next = 0;
      Symbol placed = kNoSymbol;
      std::int64_t saved = 0;
    };
    std::vector<Level> stack;
    std::int64_t x = lo_cell;
    while (true) {
      if (x == hi_cell) {
        if (closes()) return t_;
      } else {
        Level lv{x, candidates(x)};
        stack.push_back(std::move(lv));
      }
      // Advance to the next untried choice, unwinding exhausted levels.
      bool moved = false;
      while (!stack.empty()) {
        Level& top = stack.back();
        if (top.placed != kNoSymbol) {
          last_[top.placed] = top.saved;
          top.placed = kNoSymbol;
        }
        if (top.next < top.cands.size()) {
          const Symbol c = top.cands[top.next++];
          top.placed = c;
          top.saved = last_[c];
          last_[c] = top.x;
          t_[static_cast<std::size_t>(top.x)] = c;
          x = top.x + 1;
          moved = true;
          if (++nodes_ > budget_) return std::nullopt;
          break;
        }
        stack.pop_back();
      }
      if (!moved) return std::nullopt;
    }
  }

  std::int64_t nodes() const { return nodes_; }

 private:
  bool closes() const {
    for (Symbol c = 0; c < f_.size(); ++c) {
      const std::int64_t g = first_end_[c] - last_[c];
      if (g < f_.min_gap(c) || g > f_.max_gap(c)) return false;
    }
    return true;
  }

  // Symbols that may occupy cell x, best first; empty if the state is dead.
  std::vector<Symbol> candidates(std::int64_t x) {
    const std::size_t m = f_.size();
    struct Job {
      std::int64_t release, deadline;
    };
    std::vector<Job> jobs;
    std::vector<std::int64_t> deadline(m, -1);
    for (Symbol c = 0; c < m; ++c) {
      const std::int64_t lo = f_.min_gap(c), hi = f_.max_gap(c);
      if (first_end_[c] - last_[c] <= hi) continue;  // can jump straight to the end block
      const std::int64_t d = std::min(last_[c] + hi, first_end_[c] - lo);
      const std::int64_t r = std::max(x, last_[c] + lo);
      if (d < r) return {};
      deadline[c] = d;
      jobs.push_back({r, d});
    }
    if (!edf_feasible(jobs)) return {};
    std::vector<Symbol> out;
    for (Symbol c = 0; c < m; ++c) {
      const std::int64_t gap = x - last_[c];
      if (gap < f_.min_gap(c) || gap > f_.max_gap(c)) continue;
      if (first_end_[c] - x < f_.min_gap(c)) continue;
      out.push_back(c);
    }
    const Symbol tmpl = end_[static_cast<std::size_t>(x % L_)];
    std::stable_sort(out.begin(), out.end(), [&](Symbol a, Symbol b) {
      if ((a == tmpl) != (b == tmpl)) return a == tmpl;
      const bool ra = deadline[a] >= 0, rb = deadline[b] >= 0;
      if (ra != rb) return ra;
      if (ra && deadline[a] != deadline[b]) return deadline[a] < deadline[b];
      return x - last_[a] > x - last_[b];
    });
    return out;
  }

  template <class Job>
  static bool edf_feasible(std::vector<Job>& jobs) {
    std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) { return a.release < b.release; });
    std::priority_queue<std::int64_t, std::vector<std::int64_t>, std::greater<>> due;
    std::size_t i = 0;
    std::int64_t time = 0;
    while (i < jobs.size() || !due.empty()) {
      if (due.empty()) time = std::max(time, jobs[i].release);
      while (i < jobs.size() && jobs[i].release <= time) due.push(jobs[i++].deadline);
      if (due.top() < time) return false;
      due.pop();
      ++time;
    }
    return true;
  }

  const Frame& f_;
  const Sequence& s_;
  const Sequence& end_;
  std::int64_t L_;
  int k_;
  std::int64_t budget_;
  std::int64_t nodes_ = 0;
  Sequence t_;
  std::vector<std::int64_t> last_;
  std::vector<std::int64_t> first_end_;
};

// End blocks that agree with s outside the cells of the two symbols whose
// densities change; the symbol with an endpoint target density takes one full
// residue class inside those cells.
std::vector<Sequence> relabel_candidates(const Sequence& s, const Dist& from, const PBA& target,
                                         const Frame& f) {
  std::vector<Symbol> changed;
  for (Symbol c = 0; c < f.size(); ++c) {
    if (from[c] != target.dist[c]) changed.push_back(c);
  }
  std::vector<Sequence> out;
  if (changed.size() != 2) return out;
  const std::int64_t L = f.block_len();
  std::set<Sequence> seen;
  for (int which = 0; which < 2; ++which) {
    const Symbol g = changed[static_cast<std::size_t>(which)];
    const Symbol other = changed[static_cast<std::size_t>(1 - which)];
    if (g == target.irr) continue;
    const int depth = target.dist[g] == f.lo(g) ? f.n[g] : f.n[g] - 1;
    const std::int64_t step = std::int64_t{1} << depth;
    for (std::int64_t r = 0; r < step; ++r) {
      bool inside = true;
      for (std::int64_t x = r; x < L && inside; x += step) {
        const Symbol c = s[static_cast<std::size_t>(x)];
        inside = c == g || c == other;
      }
      if (!inside) continue;
      Sequence cand = s;
      for (std::int64_t x = 0; x < L; ++x) {
        auto& c = cand[static_cast<std::size_t>(x)];
        if (c == g || c == other) c = (x % step == r) ? g : other;
      }
      if (!seen.insert(cand).second) continue;
      if (verify_uniform(Block::dense(cand), f, target.dist)) out.push_back(std::move(cand));
    }
  }
  return out;
}

}  // namespace

Connection connect(const Block& s, const PBA& target, const Frame& f, const ConnectOptions& opt) {
  const std::int64_t L = f.block_len();
  if (static_cast<std::int64_t>(s.size()) != L || !s.is_dense()) {
    throw PreconditionError("connect: source must be a full block");
  }
  const Dist from = block_density(s);
  if (from.size() != f.size() || !verify_uniform(s, f, from)) {
    throw PreconditionError("connect: source block is not uniform for its density");
  }
  if (!is_pba(f, target.dist.probs())) throw PreconditionError("connect: target is not a PBA");
  if (from == target.dist) return {s, concat_n(s, s, f)};
  const PBA source = make_pba(f, from.probs());
  if (!pba_adjacent(source, target)) {
    throw PreconditionError("connect: source and target densities are not adjacent");
  }
  std::vector<Sequence> ends = relabel_candidates(s.chars(), from, target, f);
  const Sequence huff = huffman_uniform(f, target).chars();
  if (std::find(ends.begin(), ends.end(), huff) == ends.end()) ends.push_back(huff);

  for (int k = 2; k <= opt.k_max; ++k) {
    for (const auto& end : ends) {
      MiddleSearch search(f, s.chars(), end, k, opt.node_budget);
      if (auto t = search.run()) {
        Connection c{Block::dense(end), Block::dense(*t)};
        if (!verify_connection(s, c.end, c.t, f) || !verify_uniform(c.end, f, target.dist)) {
          throw ContractError("connect: produced string failed verification");
        }
        return c;
      }
    }
  }
  throw SearchExhausted("connect: no connecting string found up to k=" + std::to_string(opt.k_max),
                        opt.k_max);
}

const Connection& Connector::operator()(const Block& s, const PBA& target) {
  std::string key;
  key.reserve(s.size() * 2 + 64);
  for (Symbol c : s.chars()) {
    key += std::to_string(c);
    key += ',';
  }
  key += '|';
  for (const auto& p : target.dist.probs()) {
    key += p.str();
    key += ',';
  }
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(std::move(key), connect(s, target, f_, opt_)).first->second;
}

}  // namespace quasireg
