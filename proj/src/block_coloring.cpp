#include "quasireg/block_coloring.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <random>
#include <string>

#include "quasireg/errors.hpp"

namespace quasireg {

namespace {

constexpr std::size_t kCacheBlocks = 4;
constexpr std::int64_t kPhaseBudget = 20'000'000;  // points laid out while choosing phases

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Smallest spacing symbol i can have in any block.
double min_spacing(const std::vector<GridTerm>& terms, std::size_t i, std::int64_t M) {
  std::int64_t c = 0;
  for (const auto& t : terms) c = std::max(c, t.counts[i]);
  return static_cast<double>(M) / static_cast<double>(c);
}

}  // namespace

BlockColoringParams desk_block_params(std::size_t n, std::uint64_t seed) {
  BlockColoringParams p;
  p.M = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n);
  // 1/(4 n sqrt n), with sqrt n rounded up so the rational never exceeds it.
  const auto root = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(n)) * 1024.0));
  p.delta_match = Ratio(1024, 4 * static_cast<std::int64_t>(n) * root);
  p.seed = seed;
  return p;
}

std::vector<GridTerm> grid_decompose(const Dist& q, std::int64_t M) {
  const std::size_t n = q.size();
  std::vector<std::int64_t> base(n);
  std::vector<Ratio> frac(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Ratio v = q[static_cast<Symbol>(i)] * Ratio(M);
    base[i] = v.floor();
    frac[i] = v - Ratio(base[i]);
  }
  // Systematic rounding: for offset u in [0,1), symbol i gets one extra unit
  // iff some integer lies in (S_{i-1} - u, S_i - u]. Each u gives a grid point
  // and averaging over u recovers q exactly; the result is piecewise constant
  // in u with breakpoints at the fractional parts of the prefix sums.
  std::vector<Ratio> cuts{Ratio(0)};
  Ratio S = 0;
  for (std::size_t i = 0; i < n; ++i) {
    S += frac[i];
    const Ratio f = S - Ratio(S.floor());
    cuts.push_back(f);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(Ratio(1));
  std::vector<GridTerm> out;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const Ratio width = cuts[c + 1] - cuts[c];
    if (width <= Ratio(0)) continue;
    // Interior point: the vector is constant on the open piece but may flip at
    // its left breakpoint.
    const Ratio u = (cuts[c] + cuts[c + 1]) / Ratio(2);
    GridTerm t{width, base};
    Ratio prev = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Ratio cur = prev + frac[i];
      // integers in (prev - u, cur - u]
      t.counts[i] += (cur - u).floor() - (prev - u).floor();
      prev = cur;
    }
    // Merge equal count vectors.
    auto same = std::find_if(out.begin(), out.end(), [&](const GridTerm& g) { return g.counts == t.counts; });
    if (same != out.end()) {
      same->alpha += t.alpha;
    } else {
      out.push_back(std::move(t));
    }
  }
  return out;
}

BlockColoring::BlockColoring(Dist q, BlockColoringParams params)
    : q_(std::move(q)), params_(std::move(params)) {
  const std::size_t n = q_.size();
  if (n < 4) throw PreconditionError("block coloring: bucket needs at least 4 symbols");
  Ratio lo = q_[0], hi = q_[0];
  for (Symbol i = 0; i < n; ++i) {
    lo = std::min(lo, q_[i]);
    hi = std::max(hi, q_[i]);
  }
  if (hi > Ratio(2) * lo) throw PreconditionError("block coloring: max/min probability exceeds 2");
  if (params_.M < static_cast<std::int64_t>(n)) throw PreconditionError("block coloring: M < n");
  if (params_.delta_match <= Ratio(0) || params_.delta_match >= lo / Ratio(2)) {
    throw PreconditionError("block coloring: delta_match outside (0, min q / 2)");
  }
  terms_ = grid_decompose(q_, params_.M);
  for (const auto& t : terms_) {
    for (auto c : t.counts) {
      if (c < 1) throw PreconditionError("block coloring: cycle too short for the smallest probability");
    }
  }
  stats_.terms = terms_.size();
  stats_.delta_used = params_.delta_match;
  for (const auto& t : terms_) {
    for (Symbol i = 0; i < n; ++i) {
      const double e = std::abs(static_cast<double>(params_.M) / static_cast<double>(t.counts[i]) -
                                1.0 / q_[i].to_double());
      stats_.grid_error = std::max(stats_.grid_error, e);
    }
  }
  checked_.assign(terms_.size(), false);
  choose_phases();
  std::vector<Ratio> alphas;
  for (const auto& t : terms_) alphas.push_back(t.alpha);
  order_ = std::make_unique<LowDiscState>(Dist(alphas));
}

double BlockColoring::layout(std::size_t j, std::vector<Symbol>* out, double* lo, double* hi) const {
  const auto& counts = terms_[j].counts;
  const double M = static_cast<double>(params_.M);
  struct Pt {
    double y;
    Symbol i;
    std::int64_t l;
  };
  auto later = [](const Pt& a, const Pt& b) { return a.y != b.y ? a.y > b.y : a.i > b.i; };
  std::priority_queue<Pt, std::vector<Pt>, decltype(later)> heap(later);
  for (Symbol i = 0; i < counts.size(); ++i) heap.push({phases_[i], i, 0});
  if (out) out->assign(static_cast<std::size_t>(params_.M), 0);
  double dmin = 0.0, dmax = 0.0;
  for (std::int64_t t = 0; t < params_.M; ++t) {
    const Pt p = heap.top();
    heap.pop();
    const double d = p.y - (static_cast<double>(t) + 0.5);
    dmin = std::min(dmin, d);
    dmax = std::max(dmax, d);
    if (out) (*out)[static_cast<std::size_t>(t)] = p.i;
    if (p.l + 1 < counts[p.i]) {
      heap.push({phases_[p.i] + static_cast<double>(p.l + 1) * M / static_cast<double>(counts[p.i]),
                 p.i, p.l + 1});
    }
  }
  if (lo) *lo = dmin;
  if (hi) *hi = dmax;
  return std::max(-dmin, dmax);
}

void BlockColoring::center(const std::vector<std::size_t>& idx) {
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (auto j : idx) {
    double a = 0.0, b = 0.0;
    layout(j, nullptr, &a, &b);
    lo = first ? a : std::min(lo, a);
    hi = first ? b : std::max(hi, b);
    first = false;
  }
  const double shift = -(lo + hi) / 2.0;
  for (auto& ph : phases_) ph += shift;
}

void BlockColoring::choose_phases() {
  const std::size_t n = q_.size();
  // Terms used to score a phase vector, heaviest first, within the point budget.
  std::vector<std::size_t> idx(terms_.size());
  for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = j;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return terms_[a].alpha > terms_[b].alpha; });
  const std::size_t per_try = std::max<std::size_t>(
      1, static_cast<std::size_t>(kPhaseBudget / (params_.M * (params_.max_retries + 1))));
  if (idx.size() > per_try) idx.resize(per_try);
  auto score = [&]() {
    double r = 0.0;
    for (auto j : idx) r = std::max(r, layout(j, nullptr));
    return r;
  };

  // Deterministic spread: symbols with equal probability are evenly spaced
  // across their common smallest spacing, in index order.
  std::map<Ratio, std::vector<Symbol>> groups;
  for (Symbol i = 0; i < n; ++i) groups[q_[i]].push_back(i);
  phases_.assign(n, 0.0);
  for (const auto& [prob, members] : groups) {
    const double span = min_spacing(terms_, members.front(), params_.M);
    for (std::size_t r = 0; r < members.size(); ++r) {
      phases_[members[r]] = (static_cast<double>(r) + 0.5) * span / static_cast<double>(members.size());
    }
  }
  center(idx);
  const double target = params_.delta_match.to_double() * static_cast<double>(params_.M);
  const double allowed = target - stats_.grid_error / 2.0;
  std::vector<double> best = phases_;
  double best_r = score();
  stats_.attempts = 1;
  std::mt19937_64 rng(params_.seed ^ 0x9e3779b97f4a7c15ULL);
  for (int a = 0; a < params_.max_retries && best_r > allowed; ++a) {
    for (Symbol i = 0; i < n; ++i) phases_[i] = unit(rng) * min_spacing(terms_, i, params_.M);
    center(idx);
    const double r = score();
    ++stats_.attempts;
    if (r < best_r) {
      best_r = r;
      best = phases_;
    }
  }
  phases_ = best;
  update_delta(best_r);
}

void BlockColoring::update_delta(double radius) {
  stats_.radius = std::max(stats_.radius, radius);
  // Gaps deviate from 1/q_i by at most 2*radius + grid_error.
  const double need = (2.0 * stats_.radius + stats_.grid_error) / (2.0 * static_cast<double>(params_.M));
  if (stats_.delta_used.to_double() < need) {
    // Round up on a 2^-30 grid to keep the rational small.
    constexpr std::int64_t kDen = std::int64_t{1} << 30;
    stats_.delta_used = Ratio(static_cast<std::int64_t>(std::ceil(need * static_cast<double>(kDen))) + 1, kDen);
    stats_.enlarged = true;
  }
}

const std::vector<Symbol>& BlockColoring::block(std::size_t j) {
  for (auto it = cache_.begin(); it != cache_.end(); ++it) {
    if (it->first == j) {
      cache_.splice(cache_.begin(), cache_, it);
      return cache_.front().second;
    }
  }
  std::vector<Symbol> b;
  const double r = layout(j, &b);
  if (!checked_[j]) {
    checked_[j] = true;
    update_delta(r);
  }
  cache_.emplace_front(j, std::move(b));
  if (cache_.size() > kCacheBlocks) cache_.pop_back();
  return cache_.front().second;
}

Symbol BlockColoring::next() {
  if (cur_ == nullptr || pos_ >= cur_->size()) {
    cur_ = &block(order_->next());
    pos_ = 0;
  }
  return (*cur_)[pos_++];
}

}  // namespace quasireg
