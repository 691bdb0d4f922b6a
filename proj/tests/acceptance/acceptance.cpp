// Acceptance run: one PASS/FAIL line per criterion, details indented below.
#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "quasireg/assemble2qr.hpp"
#include "quasireg/block_coloring.hpp"
#include "quasireg/coloring.hpp"
#include "quasireg/epsqr.hpp"
#include "quasireg/errors.hpp"
#include "quasireg/frame.hpp"
#include "quasireg/lowdisc.hpp"
#include "quasireg/pinwheel.hpp"
#include "quasireg/seqcore.hpp"
#include "support.hpp"

using namespace quasireg;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void fail(const std::string& why) {
    pass = false;
    notes.push_back("FAIL: " + why);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::string fmt(double x, int digits = 4) {
  std::ostringstream o;
  o.precision(digits);
  o << std::fixed << x;
  return o.str();
}

Dist from_text(const std::string& line) {
  std::istringstream in(line);
  std::vector<Ratio> p;
  std::string tok;
  while (in >> tok) p.push_back(Ratio::parse(tok));
  return Dist(p);
}

// Fifty fixed inputs on at most four symbols, denominators at most 64.
const std::vector<std::string>& corpus() {
  static const std::vector<std::string> c = {
      "1/2 1/3 1/6",         "1/10 7/30 1/3 1/3",   "1/16 7/16 1/8 3/8",    "1/2 3/19 2/19 9/38",
      "1/24 11/24 1/8 3/8",  "1/3 2/3",             "1/4 1/2 1/4",          "1/4 3/4",
      "1/5 13/25 1/5 2/25",  "1/5 2/5 1/5 1/5",     "1/8 1/4 1/4 3/8",      "1/9 13/27 11/27",
      "11/16 1/32 9/32",     "11/25 14/25",         "11/25 8/25 1/25 1/5",  "13/30 17/30",
      "14/57 43/57",         "15/62 47/62",         "16/49 33/49",          "2/11 9/11",
      "2/17 10/51 7/17 14/51", "2/21 11/14 1/42 2/21", "2/21 11/21 8/21",   "2/27 2/9 10/27 1/3",
      "2/5 2/5 1/5",         "2/9 7/9",             "20/61 4/61 6/61 31/61", "21/38 1/38 1/38 15/38",
      "22/35 2/7 3/35",      "27/34 7/34",          "28/37 9/37",           "3/13 10/13",
      "3/28 5/28 5/7",       "3/5 2/5",             "3/5 7/40 9/40",        "3/7 1/28 9/28 3/14",
      "32/61 29/61",         "33/46 13/46",         "37/54 17/54",          "4/11 7/11",
      "4/21 2/21 4/7 1/7",   "4/27 1/3 14/27",      "4/39 29/39 2/13",      "4/43 26/43 6/43 7/43",
      "4/47 1/47 32/47 10/47", "5/16 3/16 1/2",     "5/19 4/19 5/19 5/19",  "5/26 2/13 6/13 5/26",
      "5/31 8/31 18/31",     "5/33 1/33 8/11 1/11",
  };
  return c;
}

// ---------------------------------------------------------------- 1
Outcome low_discrepancy() {
  Outcome out;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  constexpr std::int64_t L = 100000;
  for (int trial = 0; trial < 100; ++trial) {
    const auto k = static_cast<std::size_t>(qtest::uniform_int(rng, 2, 50));
    std::vector<std::int64_t> w(k);
    std::int64_t D = 0;
    for (auto& x : w) D += (x = qtest::uniform_int(rng, 1, 1000));
    std::vector<Ratio> probs;
    for (auto x : w) probs.emplace_back(x, D);
    LowDiscState s{Dist(probs)};
    // e_i = count_i * D - n * w_i, exact in integers.
    std::vector<std::int64_t> e(k, 0);
    std::vector<std::vector<std::int32_t>> pref(k, std::vector<std::int32_t>(L + 1, 0));
    bool ok = true;
    for (std::int64_t n = 1; n <= L; ++n) {
      const Symbol x = s.next();
      for (std::size_t i = 0; i < k; ++i) {
        e[i] -= w[i];
        pref[i][static_cast<std::size_t>(n)] = pref[i][static_cast<std::size_t>(n - 1)];
      }
      e[x] += D;
      ++pref[x][static_cast<std::size_t>(n)];
      for (std::size_t i = 0; i < k && ok; ++i) {
        if (e[i] > D || e[i] < -D) {
          out.fail("distribution " + std::to_string(trial) + ": prefix discrepancy above 1 at n=" +
                   std::to_string(n));
          ok = false;
        }
      }
    }
    for (int win = 0; win < 1000; ++win) {
      const std::int64_t a = qtest::uniform_int(rng, 0, L - 1);
      const std::int64_t N = qtest::uniform_int(rng, 1, L - a);
      for (std::size_t i = 0; i < k; ++i) {
        const std::int64_t c = pref[i][static_cast<std::size_t>(a + N)] - pref[i][static_cast<std::size_t>(a)];
        const std::int64_t dev = std::abs(c * D - N * w[i]);
        if (dev >= 2 * D) {
          out.fail("distribution " + std::to_string(trial) + ": window [" + std::to_string(a + 1) + ", " +
                   std::to_string(a + N) + "] deviates by 2 or more");
          break;
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  out.note("100 distributions, 1e5 prefixes, 1e3 windows each, " + fmt(secs, 1) + " s");
  if (secs >= 30.0) out.fail("runtime " + fmt(secs, 1) + " s is not below 30 s");
  return out;
}

// ---------------------------------------------------------------- 2
Outcome two_qr_corpus() {
  Outcome out;
  const auto t0 = Clock::now();
  double worst_abs = 0.0, worst_rel = 0.0;
  Ratio worst_qr = 0;
  int exhausted = 0;
  for (const auto& line : corpus()) {
    const Dist p = from_text(line);
    try {
      TwoQrStream s(p);
      std::vector<std::int64_t> last(p.size(), 0), gmin(p.size(), 0), gmax(p.size(), 0), cnt(p.size(), 0);
      for (std::int64_t n = 1; n <= 1000000; ++n) {
        const Symbol x = s.next();
        ++cnt[x];
        if (n <= 100000) {
          if (last[x] > 0) {
            const std::int64_t g = n - last[x];
            gmin[x] = gmin[x] == 0 ? g : std::min(gmin[x], g);
            gmax[x] = std::max(gmax[x], g);
          }
          last[x] = n;
        }
      }
      for (Symbol i = 0; i < p.size(); ++i) {
        if (gmin[i] == 0) {
          out.fail("(" + line + "): symbol " + std::to_string(i) + " seen fewer than twice in 1e5");
          continue;
        }
        const Ratio qr(gmax[i], gmin[i]);
        worst_qr = std::max(worst_qr, qr);
        if (qr > Ratio(2)) out.fail("(" + line + "): QR " + qr.str() + " above 2");
        const double d = static_cast<double>(cnt[i]) / 1e6;
        const double err = std::abs(d - p[i].to_double());
        worst_abs = std::max(worst_abs, err);
        worst_rel = std::max(worst_rel, err / p[i].to_double());
        if (err > 0.01) out.fail("(" + line + "): density of symbol " + std::to_string(i) + " off by " + fmt(err));
      }
    } catch (const SearchExhausted& e) {
      ++exhausted;
      out.fail("(" + line + "): connector search exhausted: " + e.what());
    }
  }
  const double secs = seconds_since(t0);
  out.note("50 inputs; worst QR at 1e5 " + worst_qr.str() + "; worst |d-p| at 1e6 " + fmt(worst_abs) +
           " (relative " + fmt(100.0 * worst_rel, 2) + "%); exhaustions " + std::to_string(exhausted) + "; " +
           fmt(secs, 1) + " s");
  if (secs >= 300.0) out.fail("runtime " + fmt(secs, 1) + " s is not below 300 s");
  return out;
}

// ---------------------------------------------------------------- 3
Outcome pba_exactness() {
  Outcome out;
  std::mt19937_64 rng(303);
  std::size_t chains = 0, longest = 0;
  for (const auto& line : corpus()) {
    const Dist p = from_text(line);
    const Frame f = frame_of(p);
    const Decomposition dec = pba_decompose(p, f);
    std::vector<Ratio> back(p.size(), Ratio(0));
    Ratio total = 0;
    for (const auto& t : dec.terms) {
      if (t.alpha <= Ratio(0)) out.fail("(" + line + "): non-positive weight");
      total += t.alpha;
      try {
        if (!(make_pba(f, t.pba.dist.probs()) == t.pba)) out.fail("(" + line + "): term misclassified");
      } catch (const PreconditionError&) {
        out.fail("(" + line + "): term is not a PBA of the frame");
      }
      for (Symbol i = 0; i < p.size(); ++i) back[i] += t.alpha * t.pba.dist[i];
    }
    if (total != Ratio(1)) out.fail("(" + line + "): weights sum to " + total.str());
    for (Symbol i = 0; i < p.size(); ++i) {
      if (back[i] != p[i]) out.fail("(" + line + "): reconstruction differs at symbol " + std::to_string(i));
    }
    const auto all = pba_enumerate(f);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < all.size(); ++a) {
      for (std::size_t b = 0; b < all.size(); ++b) pairs.emplace_back(a, b);
    }
    std::shuffle(pairs.begin(), pairs.end(), rng);
    if (pairs.size() > 400) pairs.resize(400);
    for (const auto& [a, b] : pairs) {
      PBA cur = all[a];
      std::size_t steps = 0;
      while (!(cur == all[b]) && steps <= all.size()) {
        const PBA nxt = pba_step(cur, all[b], f);
        if (!pba_adjacent(cur, nxt)) {
          out.fail("(" + line + "): step to a non-adjacent PBA");
          break;
        }
        cur = nxt;
        ++steps;
      }
      ++chains;
      longest = std::max(longest, steps);
      if (steps > all.size()) out.fail("(" + line + "): chain longer than |PBA|");
    }
  }
  out.note("50 decompositions exact; " + std::to_string(chains) + " step chains, longest " +
           std::to_string(longest));
  return out;
}

// ---------------------------------------------------------------- 4
Outcome composition() {
  Outcome out;
  std::mt19937_64 rng(404);
  int violations = 0;
  Ratio tightest = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::int64_t k = qtest::uniform_int(rng, 1, 6);
    const std::int64_t l = qtest::uniform_int(rng, 1, 4);
    const std::int64_t step = (k + l - 1) / l;
    const auto gv = qtest::random_increasing(rng, static_cast<std::size_t>(qtest::uniform_int(rng, 12, 20)), step,
                                             step + qtest::uniform_int(rng, 0, 6));
    // f mixes two gap regimes so its QR_k is not trivially 1
    std::vector<std::int64_t> fv;
    std::int64_t x = qtest::uniform_int(rng, 1, 3);
    const std::int64_t hi = qtest::uniform_int(rng, 1, 8);
    while (static_cast<std::int64_t>(fv.size()) < gv.back()) {
      fv.push_back(x);
      x += (qtest::uniform_int(rng, 0, 3) == 0) ? qtest::uniform_int(rng, 1, hi) : 1 + hi / 2;
    }
    const IncreasingFn f(fv), g(gv);
    const IncreasingFn h = compose(f, g, k, l);
    const Ratio lhs = qtest::qr_k_oracle(h.values(), l);
    const Ratio rhs = qr_k(f, k) * qtest::qr_k_oracle(gv, l);
    if (lhs > rhs) {
      ++violations;
      out.fail("sample " + std::to_string(trial) + ": " + lhs.str() + " > " + rhs.str());
    }
    tightest = std::max(tightest, lhs / rhs);
  }
  out.note("1000 samples, violations " + std::to_string(violations) + ", largest lhs/rhs " + fmt(tightest.to_double()));
  return out;
}

// ---------------------------------------------------------------- 5
Outcome coarse_bound() {
  Outcome out;
  std::mt19937_64 rng(505);
  double worst_slack = 1e9;
  for (int trial = 0; trial < 20; ++trial) {
    const Dist p = qtest::random_dist(rng, static_cast<std::size_t>(qtest::uniform_int(rng, 2, 8)), 20);
    CoarseColoring c(p);
    const Sequence s = take(c, 10000);
    for (Symbol i = 0; i < p.size(); ++i) {
      const IncreasingFn f = positions_of(s, i);
      for (std::int64_t k : {3, 5, 10}) {
        if (static_cast<std::int64_t>(f.size()) <= k) continue;
        const Ratio q = qr_k(f, k);
        const Ratio bound(k + 2, k - 2);
        worst_slack = std::min(worst_slack, (bound - q).to_double());
        if (q > bound) out.fail("distribution " + std::to_string(trial) + " color " + std::to_string(i) + " k=" +
                                std::to_string(k) + ": QR_k " + q.str());
      }
    }
  }
  out.note("20 distributions x k in {3,5,10}; smallest margin to the bound " + fmt(worst_slack));
  return out;
}

// ---------------------------------------------------------------- 6
Outcome sparse_bound() {
  Outcome out;
  std::mt19937_64 rng(606);
  for (const Ratio eps : {Ratio(1, 100), Ratio(1, 20), Ratio(9, 100)}) {
    Ratio worst = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const auto minors = static_cast<std::size_t>(qtest::uniform_int(rng, 1, 5));
      const Ratio minor_mass = eps * Ratio(qtest::uniform_int(rng, 50, 99), 100);
      std::vector<std::int64_t> w(minors);
      std::int64_t tw = 0;
      for (auto& x : w) tw += (x = qtest::uniform_int(rng, 1, 10));
      std::vector<Ratio> probs{Ratio(1) - minor_mass};
      for (auto x : w) probs.push_back(minor_mass * Ratio(x, tw));
      const Dist p(probs);
      SparseColoring c(p, eps);
      const Sequence s = take(c, 100000);
      for (Symbol i = 1; i < p.size(); ++i) {
        std::int64_t n = 0;
        for (std::size_t y = 1; y <= s.size(); ++y) {
          if (s[y - 1] != i) continue;
          const auto [lo, hi] = SparseColoring::window(p[i], eps, ++n);
          const auto yy = static_cast<std::int64_t>(y);
          if (yy < lo || yy > hi) {
            out.fail("eps " + eps.str() + " distribution " + std::to_string(trial) + ": occurrence " +
                     std::to_string(n) + " of color " + std::to_string(i) + " outside its interval");
            break;
          }
        }
        const Ratio qr = qtest::qr_oracle(s, i);
        worst = std::max(worst, qr);
        if (qtest::gaps_of(s, i).empty()) {
          out.fail("eps " + eps.str() + ": color " + std::to_string(i) + " seen fewer than twice");
        }
        if (qr > Ratio(1) + Ratio(10) * eps) {
          out.fail("eps " + eps.str() + " distribution " + std::to_string(trial) + ": QR " + qr.str());
        }
      }
    }
    out.note("eps " + eps.str() + ": worst minor QR " + fmt(worst.to_double()) + " against " +
             fmt((Ratio(1) + Ratio(10) * eps).to_double()));
  }
  return out;
}

// ---------------------------------------------------------------- 7
Outcome eps_qr_desk() {
  Outcome out;
  struct Shape {
    const char* name;
    std::int64_t lo, hi;
  };
  const Shape shapes[] = {{"uniform", 1, 1}, {"weights 100-149", 100, 149}, {"weights 100-199", 100, 199}};
  for (std::size_t n : {128, 256, 512, 1024}) {
    for (const auto& sh : shapes) {
      std::mt19937_64 rng(n * 31 + static_cast<std::size_t>(sh.hi));
      std::vector<std::int64_t> w(n);
      std::int64_t tot = 0;
      for (auto& x : w) tot += (x = qtest::uniform_int(rng, sh.lo, sh.hi));
      std::vector<Ratio> probs;
      for (auto x : w) probs.emplace_back(x, tot);
      const Dist p(probs);
      const auto t0 = Clock::now();
      // Every symbol is within a factor 2 of the largest, so the stream is a
      // single bucket and eps only shapes the unused outer layer.
      EpsQrStream s(p, desk_knobs(p, Ratio(1, 4), 0));
      if (s.block_colorings().size() != 1 || s.partition().buckets.size() != 1) {
        out.fail(std::to_string(n) + " " + sh.name + ": expected a single bucket");
        continue;
      }
      const auto& members = s.partition().buckets[0].members;
      std::vector<std::int64_t> last(n, 0), gmin(n, 0), gmax(n, 0);
      for (std::int64_t t = 1; t <= 1000000; ++t) {
        const Symbol x = s.next();
        if (last[x] > 0) {
          const std::int64_t g = t - last[x];
          gmin[x] = gmin[x] == 0 ? g : std::min(gmin[x], g);
          gmax[x] = std::max(gmax[x], g);
        }
        last[x] = t;
      }
      const BlockColoring& bc = *s.block_colorings()[0];
      const Ratio M(bc.params().M);
      const Ratio slack = Ratio(2) * bc.stats().delta_used * M;
      const Ratio nominal = Ratio(2) * bc.params().delta_match * M;
      Ratio worst_qr = 1;
      bool sandwich = true, nominal_ok = true;
      for (std::size_t r = 0; r < n; ++r) {
        const Symbol x = members[r];
        if (gmin[x] == 0) {
          out.fail(std::to_string(n) + " " + sh.name + ": symbol seen fewer than twice");
          continue;
        }
        worst_qr = std::max(worst_qr, Ratio(gmax[x], gmin[x]));
        const Ratio mean = Ratio(1) / bc.dist()[static_cast<Symbol>(r)];
        if (Ratio(gmin[x]) < mean - slack || Ratio(gmax[x]) > mean + slack) sandwich = false;
        if (Ratio(gmin[x]) < mean - nominal || Ratio(gmax[x]) > mean + nominal) nominal_ok = false;
      }
      const double secs = seconds_since(t0);
      std::string line = std::to_string(n) + " symbols, " + sh.name + ": QR " + fmt(worst_qr.to_double()) +
                         ", radius " + fmt(bc.stats().radius, 2) + ", 2*delta*M nominal " +
                         fmt(nominal.to_double(), 2) + " used " + fmt(slack.to_double(), 2) +
                         (bc.stats().enlarged ? " (enlarged)" : "") + ", " + fmt(secs, 1) + " s";
      out.note(line);
      if (!sandwich) out.fail(std::to_string(n) + " " + sh.name + ": a gap leaves [1/q - 2dM, 1/q + 2dM]");
      if (!nominal_ok) out.note("  gaps exceed the nominal matching radius; delta was enlarged to cover them");
      for (const Ratio eps : {Ratio(1, 4), Ratio(1, 2)}) {
        if (worst_qr > Ratio(1) + eps) {
          out.fail(std::to_string(n) + " " + sh.name + ", eps " + eps.str() + ": QR " + fmt(worst_qr.to_double()) +
                   " above " + fmt((Ratio(1) + eps).to_double(), 2));
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- 8
Outcome pinwheel() {
  Outcome out;
  if (solve_exact(PinwheelInstance({2, 3, 6})).schedulable) out.fail("(2,3,6) reported schedulable");
  int small = 0;
  // Non-decreasing tuples of length 1..3 over [2, 12].
  std::function<void(std::vector<std::int64_t>&)> visit = [&](std::vector<std::int64_t>& v) {
    if (!v.empty()) {
      const PinwheelInstance inst(v);
      if (inst.density() <= Ratio(7, 10)) {
        ++small;
        const auto r = solve_exact(inst);
        if (!r.schedulable) {
          out.fail("instance with density " + inst.density().str() + " reported unschedulable");
        } else if (verify_schedule(inst, r.word, true)) {
          out.fail("returned schedule does not verify");
        }
      }
    }
    if (v.size() == 3) return;
    for (std::int64_t x = v.empty() ? 2 : v.back(); x <= 12; ++x) {
      v.push_back(x);
      visit(v);
      v.pop_back();
    }
  };
  std::vector<std::int64_t> start;
  visit(start);
  out.note(std::to_string(small) + " instances with n <= 3, entries <= 12, d <= 7/10 solved and verified");

  const std::vector<std::int64_t> periods = {40,  45,  48,  50,  54,  60,  64,  72,  75,  80,
                                             81,  90,  96,  100, 108, 120, 125, 128, 135, 144,
                                             150, 160, 162, 180, 192, 200, 216, 225, 240};
  std::mt19937_64 rng(808);
  for (int inst_no = 0; inst_no < 10; ++inst_no) {
    std::vector<std::int64_t> v;
    for (;;) {
      v.clear();
      while (density(v) < Ratio(57, 100)) {
        v.push_back(periods[static_cast<std::size_t>(qtest::uniform_int(rng, 0, static_cast<std::int64_t>(periods.size()) - 1))]);
      }
      if (density(v) <= Ratio(3, 5)) break;
    }
    const PinwheelInstance inst(v);
    const auto t0 = Clock::now();
    try {
      DenseOptions opt;
      opt.eps = Ratio(1, 2);
      opt.seed = static_cast<std::uint64_t>(inst_no);
      opt.verify_horizon = 100000;
      auto s = generate_dense(inst, opt);
      const Sequence word = take(*s, 1000000);
      if (auto bad = verify_schedule(inst, word, false)) {
        out.fail("dense instance " + std::to_string(inst_no) + ": task " + std::to_string(bad->task) +
                 " missing from window " + std::to_string(bad->window_start));
      }
      out.note("dense instance " + std::to_string(inst_no) + ": " + std::to_string(v.size()) + " tasks, d = " +
               fmt(inst.density().to_double()) + ", margin " + s->eps_prime().str() + ", 1e6 steps verified, " +
               fmt(seconds_since(t0), 1) + " s");
    } catch (const std::exception& e) {
      out.fail("dense instance " + std::to_string(inst_no) + ": " + e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------- 9
struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(QUASIREG_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  std::FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 65536> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Outcome determinism() {
  Outcome out;
  const Dist small = from_text("1/2 1/3 1/6");
  std::vector<Ratio> u(150, Ratio(1, 150));
  const Dist many(u);
  const Dist sparse = from_text("19/20 3/100 1/50");
  std::vector<Ratio> bq(20, Ratio(1, 20));
  using Factory = std::function<std::unique_ptr<SymbolStream>()>;
  const std::vector<std::pair<std::string, Factory>> gens = {
      {"lowdisc", [&] { return std::make_unique<LowDiscState>(small); }},
      {"2qr", [&] { return std::make_unique<TwoQrStream>(small); }},
      {"sparse", [&] { return std::make_unique<SparseColoring>(sparse, Ratio(1, 19)); }},
      {"expanded", [&] { return std::make_unique<ExpandedSparseColoring>(from_text("97/100 3/100"), Ratio(1, 25), 2); }},
      {"block", [&] { return std::make_unique<BlockColoring>(Dist(bq), desk_block_params(20, 9)); }},
      {"epsqr", [&] { return std::make_unique<EpsQrStream>(many, desk_knobs(many, Ratio(1, 2), 9)); }},
      {"pinwheel",
       [&] {
         return std::make_unique<PinwheelStream>(PinwheelInstance(std::vector<std::int64_t>(20, 40)), Ratio(1, 2), 9);
       }},
  };
  for (const auto& [name, make] : gens) {
    auto a = make();
    auto b = make();
    if (take(*a, 200000) != take(*b, 200000)) out.fail(name + " differs between runs");
  }
  out.note(std::to_string(gens.size()) + " library generators identical over 2e5 symbols");

  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "quasireg_acceptance";
  fs::create_directories(dir);
  const fs::path third = dir / "third.csv";
  std::ofstream(third) << "a,1/2\nb,1/3\nc,1/6\n";
  const fs::path wide = dir / "wide.csv";
  {
    std::ofstream o(wide);
    for (int i = 0; i < 150; ++i) o << "s" << i << ",1/150\n";
  }
  const std::vector<std::string> cmds = {
      "gen-lowdisc --dist " + third.string() + " --n 100000",
      "gen-2qr --dist " + third.string() + " --n 100000",
      "gen-epsqr --dist " + wide.string() + " --eps 0.5 --seed 4 --n 100000",
      "pinwheel gen --v 40,40,40,40,40,40,40,40,40,40,40,40,40,40,40,40,40,40,40,40 --eps 0.5 --seed 4 --n 100000",
  };
  for (const auto& c : cmds) {
    const Run a = run_cli(c), b = run_cli(c);
    if (a.code != 0 || b.code != 0) {
      out.fail("'" + c + "' exited with " + std::to_string(a.code));
    } else if (a.out != b.out) {
      out.fail("'" + c + "' output differs between runs");
    }
  }
  out.note(std::to_string(cmds.size()) + " command-line generators byte-identical");
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"low-discrepancy prefixes and windows", low_discrepancy},
      {"2-QR assembly on the fixed corpus", two_qr_corpus},
      {"PBA decomposition exactness and step chains", pba_exactness},
      {"composition inequality", composition},
      {"coarse coloring QR_k bound", coarse_bound},
      {"sparse coloring intervals and QR", sparse_bound},
      {"eps-QR desk profile on 128-1024 symbols", eps_qr_desk},
      {"pinwheel oracle and dense generation", pinwheel},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("unexpected exception: ") + e.what());
    }
    std::cout << "criterion " << (i + 1) << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << " ("
              << fmt(seconds_since(t0), 1) << " s)\n";
    for (const auto& n : o.notes) std::cout << "    " << n << "\n";
    std::cout.flush();
    if (!o.pass) ++failed;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
