#include "quasireg/seqcore.hpp"

#include <algorithm>
#include <string>

#include "quasireg/errors.hpp"

namespace quasireg {

namespace {

std::size_t infer_alphabet(std::span<const Symbol> prefix, std::size_t given) {
  std::size_t k = given;
  for (Symbol s : prefix) {
    if (s == kNoSymbol) throw PreconditionError("sequence contains the reserved symbol");
    k = std::max<std::size_t>(k, static_cast<std::size_t>(s) + 1);
  }
  return k;
}

}  // namespace

GapStats gap_stats(std::span<const Symbol> prefix, std::size_t alphabet_size) {
  if (prefix.empty()) throw PreconditionError("gap_stats: empty prefix");
  GapStats st;
  st.symbols.resize(infer_alphabet(prefix, alphabet_size));
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    const auto pos = static_cast<std::int64_t>(i) + 1;
    auto& g = st.symbols[prefix[i]];
    if (g.count == 0) {
      g.first_pos = pos;
    } else {
      const std::int64_t gap = pos - g.last_pos;
      if (g.count == 1) {
        g.min_gap = g.max_gap = gap;
      } else {
        g.min_gap = std::min(g.min_gap, gap);
        g.max_gap = std::max(g.max_gap, gap);
      }
    }
    g.last_pos = pos;
    ++g.count;
  }
  st.length = static_cast<std::int64_t>(prefix.size());
  return st;
}

Ratio qr_of(const SymbolGaps& g) {
  if (g.count < 2) return Ratio(1);
  return Ratio(g.max_gap, g.min_gap);
}

Ratio qr_observed(const GapStats& stats) {
  Ratio best = 1;
  for (const auto& g : stats.symbols) best = std::max(best, qr_of(g));
  return best;
}

IncreasingFn::IncreasingFn(std::vector<std::int64_t> sample) : v_(std::move(sample)) {
  for (std::size_t i = 0; i + 1 < v_.size(); ++i) {
    if (v_[i + 1] <= v_[i]) {
      throw PreconditionError("sample not strictly increasing at index " + std::to_string(i + 1));
    }
  }
}

std::int64_t IncreasingFn::min_gap() const {
  std::int64_t m = 0;
  for (std::size_t i = 1; i < v_.size(); ++i) {
    const std::int64_t g = v_[i] - v_[i - 1];
    if (m == 0 || g < m) m = g;
  }
  return m;
}

std::int64_t IncreasingFn::max_gap() const {
  std::int64_t m = 0;
  for (std::size_t i = 1; i < v_.size(); ++i) m = std::max(m, v_[i] - v_[i - 1]);
  return m;
}

IncreasingFn positions_of(std::span<const Symbol> prefix, Symbol s) {
  std::vector<std::int64_t> pos;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (prefix[i] == s) pos.push_back(static_cast<std::int64_t>(i) + 1);
  }
  return IncreasingFn(std::move(pos));
}

Ratio qr_k(const IncreasingFn& f, std::int64_t k) {
  const auto m = static_cast<std::int64_t>(f.size());
  if (k < 1) throw PreconditionError("qr_k: k must be positive");
  if (k >= m) throw PreconditionError("qr_k: k must be smaller than the sample length");
  if (k == 1) return Ratio(f.max_gap(), f.min_gap());
  // The ratio separates: sup of the r-step mean over inf of the q-step mean.
  const auto& v = f.values();
  std::int64_t hi_num = 0, hi_den = 1, lo_num = 0, lo_den = 0;
  for (std::int64_t r = k; r < m; ++r) {
    for (std::int64_t n = 0; n + r < m; ++n) {
      const std::int64_t d = v[n + r] - v[n];
      if (static_cast<__int128>(d) * hi_den > static_cast<__int128>(hi_num) * r) {
        hi_num = d;
        hi_den = r;
      }
      if (lo_den == 0 || static_cast<__int128>(d) * lo_den < static_cast<__int128>(lo_num) * r) {
        lo_num = d;
        lo_den = r;
      }
    }
  }
  return Ratio(hi_num, hi_den) / Ratio(lo_num, lo_den);
}

std::vector<Ratio> empirical_density(std::span<const Symbol> prefix, std::size_t alphabet_size) {
  if (prefix.empty()) throw PreconditionError("empirical_density: empty prefix");
  std::vector<std::int64_t> counts(infer_alphabet(prefix, alphabet_size), 0);
  for (Symbol s : prefix) ++counts[s];
  std::vector<Ratio> out;
  out.reserve(counts.size());
  const auto n = static_cast<std::int64_t>(prefix.size());
  for (auto c : counts) out.emplace_back(c, n);
  return out;
}

Ratio discrepancy(std::span<const Symbol> prefix, const Dist& p) {
  for (Symbol s : prefix) {
    if (s >= p.size()) {
      throw PreconditionError("discrepancy: symbol " + std::to_string(s) + " not in distribution");
    }
  }
  StreamAnalyzer a(p.size(), p);
  for (Symbol s : prefix) a.push(s);
  a.finish();
  return a.discrepancy();
}

bool check_min_gap_bound(const IncreasingFn& f, const Ratio& density) {
  if (density <= Ratio(0)) throw PreconditionError("check_min_gap_bound: density must be positive");
  if (f.size() < 2) throw PreconditionError("check_min_gap_bound: need at least two samples");
  const Ratio bound = Ratio(1) / (density * qr_k(f, 1));
  return Ratio(f.min_gap()) >= bound;
}

StreamAnalyzer::StreamAnalyzer(std::size_t alphabet_size, std::optional<Dist> target)
    : target_(std::move(target)) {
  if (target_ && target_->size() > alphabet_size) alphabet_size = target_->size();
  stats_.symbols.resize(alphabet_size);
  worst_.assign(alphabet_size, 0);
}

void StreamAnalyzer::note_discrepancy(Symbol s, std::int64_t count, std::int64_t n) {
  const Ratio& p = (*target_)[s];
  __int128 v = static_cast<__int128>(count) * p.den() - static_cast<__int128>(n) * p.num();
  if (v < 0) v = -v;
  if (v > worst_[s]) worst_[s] = v;
}

void StreamAnalyzer::push(Symbol s) {
  if (s >= stats_.symbols.size()) {
    if (target_) throw PreconditionError("symbol " + std::to_string(s) + " not in distribution");
    stats_.symbols.resize(static_cast<std::size_t>(s) + 1);
    worst_.resize(stats_.symbols.size(), 0);
  }
  const std::int64_t pos = ++stats_.length;
  auto& g = stats_.symbols[s];
  if (target_) {
    // Between occurrences count - n*p only decreases, so the extremes sit at
    // position 1, just before each occurrence, at each occurrence and at the end.
    if (pos == 1) {
      for (Symbol t = 0; t < stats_.symbols.size(); ++t) {
        if (t != s) note_discrepancy(t, 0, 1);
      }
    } else {
      note_discrepancy(s, g.count, pos - 1);
    }
    note_discrepancy(s, g.count + 1, pos);
  }
  if (g.count == 0) {
    g.first_pos = pos;
  } else {
    const std::int64_t gap = pos - g.last_pos;
    if (g.count == 1) {
      g.min_gap = g.max_gap = gap;
    } else {
      g.min_gap = std::min(g.min_gap, gap);
      g.max_gap = std::max(g.max_gap, gap);
    }
  }
  g.last_pos = pos;
  ++g.count;
  finished_ = false;
}

void StreamAnalyzer::finish() {
  if (!target_ || finished_) return;
  for (Symbol s = 0; s < stats_.symbols.size(); ++s) {
    note_discrepancy(s, stats_.symbols[s].count, stats_.length);
  }
  finished_ = true;
}

std::vector<Ratio> StreamAnalyzer::density() const {
  std::vector<Ratio> out;
  for (const auto& g : stats_.symbols) {
    out.push_back(stats_.length == 0 ? Ratio(0) : Ratio(g.count, stats_.length));
  }
  return out;
}

Ratio StreamAnalyzer::discrepancy() const {
  if (!target_) throw PreconditionError("discrepancy requires a target distribution");
  Ratio best = 0;
  for (Symbol s = 0; s < worst_.size(); ++s) {
    const Ratio v(checked_narrow(worst_[s]), (*target_)[s].den());
    best = std::max(best, v);
  }
  return best;
}

std::vector<Symbol> StreamAnalyzer::stale_symbols() const {
  std::vector<Symbol> out;
  for (Symbol s = 0; s < stats_.symbols.size(); ++s) {
    const auto& g = stats_.symbols[s];
    if (g.count >= 2 && stats_.length - g.last_pos > 2 * g.max_gap) out.push_back(s);
  }
  return out;
}

}  // namespace quasireg
