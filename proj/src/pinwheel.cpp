#include "quasireg/pinwheel.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "quasireg/errors.hpp"

namespace quasireg {

PinwheelInstance::PinwheelInstance(std::vector<std::int64_t> v) : v_(std::move(v)) {
  if (v_.empty()) throw PreconditionError("pinwheel: no tasks");
  for (auto x : v_) {
    if (x < 2) throw PreconditionError("pinwheel: every period must be at least 2");
  }
}

Ratio PinwheelInstance::density() const { return quasireg::density(v_); }

Ratio density(const std::vector<std::int64_t>& v) {
  Ratio d = 0;
  for (auto x : v) d += Ratio(1, x);
  return d;
}

namespace {

void check_symbols(const PinwheelInstance& inst, std::span<const Symbol> s) {
  for (Symbol x : s) {
    if (x > inst.size()) {
      throw PreconditionError("pinwheel: symbol " + std::to_string(x) + " is not a task");
    }
  }
}

void keep_earliest(std::optional<Violation>& best, Violation cand) {
  if (!best || cand.window_start < best->window_start ||
      (cand.window_start == best->window_start && cand.task < best->task)) {
    best = cand;
  }
}

}  // namespace

std::optional<Violation> verify_schedule(const PinwheelInstance& inst, std::span<const Symbol> s,
                                         bool periodic) {
  check_symbols(inst, s);
  const auto L = static_cast<std::int64_t>(s.size());
  const std::size_t n = inst.size();
  std::vector<std::vector<std::int64_t>> occ(n);
  for (std::int64_t t = 0; t < L; ++t) {
    if (s[t] != kIdle) occ[s[t] - 1].push_back(t + 1);
  }
  std::optional<Violation> best;
  for (std::size_t k = 0; k < n; ++k) {
    const std::int64_t v = inst[k];
    const auto& o = occ[k];
    if (periodic) {
      if (L == 0) return std::nullopt;
      if (o.empty()) {
        keep_earliest(best, {k + 1, 1});
        continue;
      }
      for (std::size_t a = 0; a < o.size(); ++a) {
        const std::int64_t next = a + 1 < o.size() ? o[a + 1] : o.front() + L;
        if (next - o[a] <= v) continue;
        // Starts o[a]+1 .. next-v miss task k; report the smallest one mod L.
        const std::int64_t first = o[a] % L;  // 0-based residue of o[a]+1
        const std::int64_t span = next - v - o[a];
        keep_earliest(best, {k + 1, first + span > L ? 1 : first + 1});
      }
    } else {
      std::int64_t prev = 0;
      for (auto pos : o) {
        if (pos - prev > v) {
          keep_earliest(best, {k + 1, prev + 1});
          break;
        }
        prev = pos;
      }
      if (L - prev >= v) keep_earliest(best, {k + 1, prev + 1});
    }
  }
  return best;
}

ScheduleVerifier::ScheduleVerifier(const PinwheelInstance& inst)
    : v_(inst.v()), last_(inst.size(), 0) {
  for (std::size_t k = 0; k < v_.size(); ++k) due_.insert({v_[k], k});
}

std::optional<Violation> ScheduleVerifier::push(Symbol s) {
  ++t_;
  if (s > v_.size()) throw PreconditionError("pinwheel: symbol " + std::to_string(s) + " is not a task");
  if (s != kIdle) {
    const std::size_t k = s - 1;
    due_.erase({last_[k] + v_[k], k});
    last_[k] = t_;
    due_.insert({t_ + v_[k], k});
  }
  const auto& [due, k] = *due_.begin();
  if (due <= t_) return Violation{k + 1, last_[k] + 1};
  return std::nullopt;
}

SolveResult solve_exact(const PinwheelInstance& inst, std::uint64_t state_cap) {
  const std::size_t n = inst.size();
  std::vector<std::uint64_t> stride(n);
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < n; ++k) {
    stride[k] = total;
    const auto v = static_cast<std::uint64_t>(inst[k]);
    if (total > state_cap / v) {
      throw PreconditionError("pinwheel solve: state space exceeds the cap of " + std::to_string(state_cap));
    }
    total *= v;
  }
  SolveResult res;
  // 0 unseen, 1 on the stack, 2 no infinite path.
  std::vector<std::uint8_t> mark(total, 0);
  struct Frame {
    std::uint64_t code;
    std::vector<std::size_t> order;  // moves, least slack first
    std::size_t next = 0;
    std::size_t taken = 0;
  };
  auto decode = [&](std::uint64_t code) {
    std::vector<std::int64_t> a(n);
    for (std::size_t k = 0; k < n; ++k) a[k] = static_cast<std::int64_t>((code / stride[k]) % inst[k]);
    return a;
  };
  auto make_frame = [&](std::uint64_t code) {
    const auto a = decode(code);
    Frame f{code, std::vector<std::size_t>(n)};
    std::iota(f.order.begin(), f.order.end(), 0);
    std::stable_sort(f.order.begin(), f.order.end(), [&](std::size_t x, std::size_t y) {
      return inst[x] - a[x] < inst[y] - a[y];
    });
    return f;
  };
  std::vector<Frame> stack;
  stack.push_back(make_frame(0));
  mark[0] = 1;
  res.states_visited = 1;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next == f.order.size()) {
      mark[f.code] = 2;
      stack.pop_back();
      continue;
    }
    const std::size_t j = f.order[f.next++];
    const auto a = decode(f.code);
    std::uint64_t succ = 0;
    bool ok = true;
    for (std::size_t k = 0; k < n && ok; ++k) {
      const std::int64_t b = k == j ? 0 : a[k] + 1;
      if (b > inst[k] - 1) ok = false;
      succ += static_cast<std::uint64_t>(b) * stride[k];
    }
    if (!ok || mark[succ] == 2) continue;
    f.taken = j;
    if (mark[succ] == 1) {
      std::size_t from = 0;
      while (stack[from].code != succ) ++from;
      for (std::size_t i = from; i < stack.size(); ++i) {
        res.word.push_back(static_cast<Symbol>(stack[i].taken + 1));
      }
      res.schedulable = true;
      return res;
    }
    mark[succ] = 1;
    ++res.states_visited;
    stack.push_back(make_frame(succ));
  }
  return res;
}

Dist dense_distribution(const PinwheelInstance& inst, const Ratio& eps_prime) {
  constexpr std::int64_t kGrid = std::int64_t{1} << 24;
  constexpr std::size_t kMinBucket = 4;
  const std::size_t n = inst.size();
  std::vector<Ratio> p(n);
  const Ratio scale = (Ratio(1) + eps_prime) * Ratio(kGrid);
  for (std::size_t k = 0; k < n; ++k) p[k] = Ratio((scale / Ratio(inst[k])).ceil(), kGrid);
  const Ratio P = *std::max_element(p.begin(), p.end());
  // Bucket i holds (P/2^(i-1), P/2^(i-2)]; the top bucket is i = 2.
  auto bucket_of = [&](const Ratio& x) {
    int i = 2;
    Ratio lo = P / Ratio(2);
    while (!(x > lo)) {
      lo /= Ratio(2);
      ++i;
    }
    return i;
  };
  auto upper_of = [&](int i) {
    Ratio u = P;
    for (int b = 2; b < i; ++b) u /= Ratio(2);
    return u;
  };
  std::vector<Ratio> fillers;
  {
    std::vector<std::pair<int, Ratio>> by_bucket;  // bucket, smallest task prob
    std::vector<std::size_t> sizes;
    for (const auto& x : p) {
      const int i = bucket_of(x);
      auto it = std::find_if(by_bucket.begin(), by_bucket.end(), [&](const auto& e) { return e.first == i; });
      if (it == by_bucket.end()) {
        by_bucket.emplace_back(i, x);
        sizes.push_back(1);
      } else {
        it->second = std::min(it->second, x);
        ++sizes[static_cast<std::size_t>(it - by_bucket.begin())];
      }
    }
    for (std::size_t b = 0; b < by_bucket.size(); ++b) {
      for (std::size_t m = sizes[b]; m < kMinBucket; ++m) fillers.push_back(by_bucket[b].second);
    }
  }
  Ratio used = 0;
  for (const auto& x : p) used += x;
  for (const auto& x : fillers) used += x;
  Ratio rest = Ratio(1) - used;
  if (rest < Ratio(0)) {
    throw PreconditionError("pinwheel gen: margin " + eps_prime.str() + " leaves no room for padding");
  }
  const std::int64_t whole = (rest / P).floor();
  for (std::int64_t i = 0; i < whole; ++i) fillers.push_back(P);
  Ratio r = rest - Ratio(whole) * P;
  if (r > P / Ratio(2)) {
    fillers.push_back(r);
  } else if (r > Ratio(0) && whole > 0) {
    fillers.back() = (P + r) / Ratio(2);
    fillers.push_back((P + r) / Ratio(2));
  } else if (r > Ratio(0)) {
    // Raise probabilities inside their buckets; serving a task more often is harmless.
    auto raise = [&](Ratio& x) {
      const Ratio room = upper_of(bucket_of(x)) - x;
      const Ratio add = std::min(room, r);
      x += add;
      r -= add;
    };
    for (auto& x : fillers) {
      if (r > Ratio(0)) raise(x);
    }
    for (auto& x : p) {
      if (r > Ratio(0)) raise(x);
    }
    if (r > Ratio(0)) throw PreconditionError("pinwheel gen: cannot place the idle mass in the bucket grid");
  }
  p.insert(p.end(), fillers.begin(), fillers.end());
  return Dist(p);
}

namespace {

EpsQrKnobs pinwheel_knobs(const Dist& d, const Ratio& eps_prime, std::uint64_t seed) {
  EpsQrKnobs k = desk_knobs(d, eps_prime, seed);
  k.N = 3;  // every padded bucket has at least four members
  return k;
}

}  // namespace

PinwheelStream::PinwheelStream(const PinwheelInstance& inst, const Ratio& eps_prime, std::uint64_t seed)
    : inst_(inst), eps_prime_(eps_prime), verifier_(inst) {
  Dist d = dense_distribution(inst_, eps_prime_);
  src_ = std::make_unique<EpsQrStream>(d, pinwheel_knobs(d, eps_prime_, seed));
  // Skip the warm-up until every task has appeared once.
  std::vector<bool> seen(inst_.size(), false);
  std::size_t missing = inst_.size();
  const std::int64_t limit = 64 * *std::max_element(inst_.v().begin(), inst_.v().end());
  while (missing > 0) {
    if (trimmed_ > limit) throw ContractError("pinwheel gen: some task never appears during warm-up");
    const Symbol s = src_->next();
    ++trimmed_;
    if (s < inst_.size() && !seen[s]) {
      seen[s] = true;
      --missing;
    }
  }
}

Symbol PinwheelStream::next() {
  const Symbol raw = src_->next();
  const Symbol s = raw < inst_.size() ? raw + 1 : kIdle;
  if (auto bad = verifier_.push(s)) {
    throw ContractError("pinwheel gen: task " + std::to_string(bad->task) + " missing from window starting at " +
                        std::to_string(bad->window_start));
  }
  return s;
}

std::unique_ptr<PinwheelStream> generate_dense(const PinwheelInstance& inst, const DenseOptions& opt) {
  const Ratio d = inst.density();
  if (d > Ratio(1)) throw PreconditionError("pinwheel gen: density " + d.str() + " exceeds 1");
  if (opt.eps <= Ratio(0) || opt.eps >= Ratio(1)) throw PreconditionError("pinwheel gen: eps must lie in (0,1)");
  if (d * (Ratio(1) + opt.eps) >= Ratio(1)) {
    throw PreconditionError("pinwheel gen: d(v)(1+eps) = " + (d * (Ratio(1) + opt.eps)).str() + " is not below 1");
  }
  const std::int64_t vmin = *std::min_element(inst.v().begin(), inst.v().end());
  if (vmin < opt.min_period) {
    throw PreconditionError("pinwheel gen: smallest period " + std::to_string(vmin) + " is below the guard " +
                            std::to_string(opt.min_period));
  }
  Ratio margin = opt.eps;
  std::string last_error;
  for (int a = 0; a < opt.margin_attempts; ++a, margin /= Ratio(2)) {
    try {
      PinwheelStream trial(inst, margin, opt.seed);
      for (std::int64_t t = 0; t < opt.verify_horizon; ++t) trial.next();
      return std::make_unique<PinwheelStream>(inst, margin, opt.seed);
    } catch (const ContractError& e) {
      last_error = e.what();
    } catch (const PreconditionError& e) {
      last_error = e.what();
    }
  }
  throw ContractError("pinwheel gen: no margin passed verification (" + last_error + ")");
}

}  // namespace quasireg
