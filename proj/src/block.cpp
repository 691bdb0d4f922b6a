#include "quasireg/block.hpp"

#include <algorithm>
#include <string>

#include "quasireg/errors.hpp"

namespace quasireg {

Block::Block(std::vector<std::int64_t> positions, std::vector<Symbol> chars)
    : pos_(std::move(positions)), chr_(std::move(chars)) {
  if (pos_.size() != chr_.size()) throw PreconditionError("block: size mismatch");
  for (std::size_t i = 0; i < pos_.size(); ++i) {
    if (pos_[i] < 1 || (i > 0 && pos_[i] <= pos_[i - 1])) {
      throw PreconditionError("block: domain must be increasing positive integers");
    }
  }
}

Block Block::dense(const Sequence& chars) {
  Block b;
  b.pos_.resize(chars.size());
  for (std::size_t i = 0; i < chars.size(); ++i) b.pos_[i] = static_cast<std::int64_t>(i) + 1;
  b.chr_ = chars;
  return b;
}

std::set<Symbol> Block::appears() const { return {chr_.begin(), chr_.end()}; }

bool Block::is_dense() const {
  return pos_.empty() || (pos_.front() == 1 && pos_.back() == static_cast<std::int64_t>(pos_.size()));
}

std::optional<Symbol> Block::at(std::int64_t index) const {
  auto it = std::lower_bound(pos_.begin(), pos_.end(), index);
  if (it == pos_.end() || *it != index) return std::nullopt;
  return chr_[static_cast<std::size_t>(it - pos_.begin())];
}

Block Block::translate(std::int64_t m) const {
  Block b = *this;
  for (auto& p : b.pos_) p += m;
  if (!b.pos_.empty() && b.pos_.front() < 1) throw PreconditionError("block: translate below 1");
  return b;
}

Block Block::restrict_to(std::int64_t lo, std::int64_t hi) const {
  auto a = std::lower_bound(pos_.begin(), pos_.end(), lo);
  auto b = std::upper_bound(pos_.begin(), pos_.end(), hi);
  if (b < a) b = a;
  Block out;
  out.pos_.assign(a, b);
  out.chr_.assign(chr_.begin() + (a - pos_.begin()), chr_.begin() + (b - pos_.begin()));
  return out;
}

std::int64_t max_window(const Block& s, const Frame& f) {
  if (s.empty()) return 0;
  return checked_narrow(ceil_div(s.max_index(), f.block_len()));
}

Block join(const Block& s, const Block& t) {
  std::vector<std::int64_t> pos;
  std::vector<Symbol> chr;
  pos.reserve(s.size() + t.size());
  chr.reserve(s.size() + t.size());
  std::size_t i = 0, j = 0;
  while (i < s.size() || j < t.size()) {
    if (j == t.size() || (i < s.size() && s.positions()[i] < t.positions()[j])) {
      pos.push_back(s.positions()[i]);
      chr.push_back(s.chars()[i++]);
    } else {
      if (i < s.size() && s.positions()[i] == t.positions()[j]) {
        throw ContractError("join: domains overlap at " + std::to_string(t.positions()[j]));
      }
      pos.push_back(t.positions()[j]);
      chr.push_back(t.chars()[j++]);
    }
  }
  return Block(std::move(pos), std::move(chr));
}

Block concat_n(const Block& s, const Block& t, const Frame& f) {
  return join(s, t.translate(max_window(s, f) * f.block_len()));
}

Block repeat_n(const Block& s, std::int64_t k, const Frame& f) {
  if (k < 1) throw PreconditionError("repeat_n: k must be positive");
  Block out = s;
  for (std::int64_t i = 1; i < k; ++i) out = concat_n(out, s, f);
  return out;
}

Block window(const Block& s, const Frame& f, std::int64_t k) {
  if (k == -1) k = max_window(s, f);
  if (k < 1) throw PreconditionError("window: index must be >= 1 or -1");
  if (k > max_window(s, f)) throw PreconditionError("window: index beyond the last window");
  const std::int64_t L = f.block_len();
  return s.restrict_to((k - 1) * L + 1, k * L).translate(-(k - 1) * L);
}

Block diamond_n(const Block& s, const Block& t, const Frame& f) {
  const Block a = window(s, f, -1);
  const Block b = window(t, f, 1);
  if (!(a == b)) {
    // Report the first index (within the shared window) where they disagree.
    std::int64_t where = 0;
    for (std::int64_t i = 1; i <= f.block_len(); ++i) {
      if (a.at(i) != b.at(i)) {
        where = i;
        break;
      }
    }
    throw PreconditionError("diamond: last window of left operand differs from first window of "
                            "right operand at index " + std::to_string(where));
  }
  const Block u = s.restrict_to(1, (max_window(s, f) - 1) * f.block_len());
  return concat_n(u, t, f);
}

std::int64_t block_max_gap(const Block& s, Symbol sym) {
  if (s.empty()) return 0;
  const auto& pos = s.positions();
  const auto& chr = s.chars();
  std::int64_t prev = pos.front();
  std::int64_t best = 0;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (chr[i] == sym) {
      best = std::max(best, pos[i] - prev);
      prev = pos[i];
    }
  }
  return std::max(best, pos.back() - prev);
}

std::optional<std::int64_t> block_min_gap(const Block& s, Symbol sym) {
  std::optional<std::int64_t> best;
  std::int64_t prev = -1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.chars()[i] != sym) continue;
    if (prev >= 0) {
      const std::int64_t g = s.positions()[i] - prev;
      if (!best || g < *best) best = g;
    }
    prev = s.positions()[i];
  }
  return best;
}

namespace {

// Single pass computing the gap sandwich for every symbol at once.
bool sandwich_holds(const Block& s, const Frame& f, const std::vector<bool>& check) {
  const std::size_t k = f.size();
  std::vector<std::int64_t> last(k, -1), cnt(k, 0);
  const auto& pos = s.positions();
  const auto& chr = s.chars();
  const std::int64_t start = pos.empty() ? 0 : pos.front();
  for (std::size_t i = 0; i < pos.size(); ++i) {
    const Symbol c = chr[i];
    if (c >= k || !check[c]) continue;
    const std::int64_t prev = last[c] < 0 ? start : last[c];
    const std::int64_t g = pos[i] - prev;
    if (g > f.max_gap(c)) return false;
    if (last[c] >= 0 && g < f.min_gap(c)) return false;
    last[c] = pos[i];
    ++cnt[c];
  }
  const std::int64_t end = pos.empty() ? 0 : pos.back();
  for (Symbol c = 0; c < k; ++c) {
    if (!check[c]) continue;
    if (cnt[c] < 2) return false;  // MinGap infinite
    if (end - last[c] > f.max_gap(c)) return false;
  }
  return true;
}

}  // namespace

bool verify_compatible(const Block& s, const Frame& f, bool local) {
  std::vector<bool> check(f.size(), true);
  if (local) {
    std::fill(check.begin(), check.end(), false);
    for (Symbol c : s.chars()) {
      if (c < f.size()) check[c] = true;
    }
  }
  return sandwich_holds(s, f, check);
}

bool verify_uniform(const Block& s, const Frame& f, const Dist& p) {
  const std::int64_t L = f.block_len();
  if (static_cast<std::int64_t>(s.size()) != L || !s.is_dense()) return false;
  if (p.size() != f.size()) return false;
  std::vector<std::vector<std::int64_t>> where(f.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Symbol c = s.chars()[i];
    if (c >= f.size()) return false;
    where[c].push_back(s.positions()[i] - 1);  // 0-based
  }
  for (Symbol c = 0; c < f.size(); ++c) {
    if (Ratio(static_cast<std::int64_t>(where[c].size()), L) != p[c]) return false;
    if (where[c].empty()) return false;
    const std::int64_t coarse = f.min_gap(c);  // 2^(n-1)
    const std::int64_t fine = f.max_gap(c);    // 2^n
    const std::int64_t r = where[c].front() % coarse;
    std::vector<std::int64_t> per(2, 0);
    for (auto x : where[c]) {
      if (x % coarse != r) return false;
      ++per[(x % fine) == r ? 0 : 1];
    }
    // One of the two fine classes inside the coarse class must be full.
    if (per[0] != L / fine && per[1] != L / fine) return false;
  }
  return true;
}

bool verify_connection(const Block& s, const Block& s2, const Block& t, const Frame& f) {
  const auto sig = t.appears();
  if (sig != s.appears() || sig != s2.appears()) return false;
  if (t.empty()) return false;
  if (!verify_compatible(t, f, true)) return false;
  return window(t, f, 1) == s && window(t, f, -1) == s2;
}

std::string describe(const Block& s, std::int64_t block_len) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0 && block_len > 0 && (s.positions()[i] - 1) % block_len == 0) out += '|';
    const Symbol c = s.chars()[i];
    out += c < 26 ? static_cast<char>('a' + c) : '?';
  }
  return out;
}

}  // namespace quasireg
