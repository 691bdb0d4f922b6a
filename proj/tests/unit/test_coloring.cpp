#include <doctest.h>

#include <random>

#include "quasireg/coloring.hpp"
#include "quasireg/errors.hpp"
#include "support.hpp"

using namespace quasireg;

namespace {

std::vector<std::int64_t> linear(std::int64_t a, std::size_t m) {
  std::vector<std::int64_t> v;
  for (std::size_t i = 1; i <= m; ++i) v.push_back(a * static_cast<std::int64_t>(i));
  return v;
}

}  // namespace

TEST_CASE("compose of linear maps") {
  const IncreasingFn f(linear(2, 600)), g(linear(3, 200));
  const IncreasingFn h = compose(f, g, 3, 1);
  CHECK(h.values() == linear(6, 200));
  CHECK(qr_k(h, 3) == Ratio(1));
}

TEST_CASE("compose rejects small gaps of g") {
  const IncreasingFn f(linear(1, 100)), g({1, 2, 5, 9});
  CHECK_THROWS_AS(compose(f, g, 2, 1), PreconditionError);
  CHECK_NOTHROW(compose(f, g, 2, 2));
}

TEST_CASE("composition inequality against the definitional QR") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const std::int64_t k = qtest::uniform_int(rng, 1, 4);
    const std::int64_t l = qtest::uniform_int(rng, 1, 3);
    const std::int64_t step = (k + l - 1) / l;
    const auto gv = qtest::random_increasing(rng, 18, step, step + 3);
    const auto fv = qtest::random_increasing(rng, static_cast<std::size_t>(gv.back()), 1, 4);
    const IncreasingFn f(fv), g(gv);
    const IncreasingFn h = compose(f, g, k, l);
    REQUIRE(h.size() == g.size());
    const Ratio lhs = qtest::qr_k_oracle(h.values(), l);
    CHECK(lhs == qr_k(h, l));
    CHECK(lhs <= qr_k(f, k) * qtest::qr_k_oracle(gv, l));
  }
}

TEST_CASE("coarse coloring of halves alternates") {
  CoarseColoring c(qtest::dist_of({Ratio(1, 2), Ratio(1, 2)}));
  const Sequence s = take(c, 1000);
  for (std::size_t i = 0; i + 1 < s.size(); ++i) CHECK(s[i] != s[i + 1]);
}

TEST_CASE("coarse coloring QR_k bound and window means") {
  const Dist p = qtest::dist_of({Ratio(1, 2), Ratio(1, 3), Ratio(1, 6)});
  CoarseColoring c(p);
  const Sequence s = take(c, 10000);
  for (Symbol i = 0; i < 3; ++i) {
    const IncreasingFn f = positions_of(s, i);
    for (std::int64_t k : {3, 10}) {
      CHECK(qr_k(f, k) <= Ratio(k + 2, k - 2));
      const auto& v = f.values();
      const Ratio lo = Ratio(k - 2) / (Ratio(k) * p[i]);
      const Ratio hi = Ratio(k + 2) / (Ratio(k) * p[i]);
      for (std::int64_t r = k; r < k + 40; ++r) {
        for (std::size_t n = 0; n + static_cast<std::size_t>(r) < v.size(); ++n) {
          const Ratio mean(v[n + static_cast<std::size_t>(r)] - v[n], r);
          CHECK_MESSAGE((lo <= mean && mean <= hi), "color ", i, " r ", r, " n ", n);
          if (!(lo <= mean && mean <= hi)) return;
        }
      }
    }
  }
}

TEST_CASE("sparse coloring: single minor color is near periodic") {
  SparseColoring c(qtest::dist_of({Ratio(97, 100), Ratio(3, 100)}), Ratio(1, 20));
  const Sequence s = take(c, 100000);
  for (auto g : qtest::gaps_of(s, 1)) {
    CHECK(g >= 32);
    CHECK(g <= 35);
  }
}

TEST_CASE("sparse coloring: intervals, gap bounds, QR and density") {
  const Dist p = qtest::dist_of({Ratio(95, 100), Ratio(3, 100), Ratio(2, 100)});
  // p_0 = 1 - 1/20 sits on the boundary of the strict precondition
  CHECK_THROWS_AS(SparseColoring(p, Ratio(1, 20)), PreconditionError);
  const Ratio eps(1, 19);
  SparseColoring c(p, eps);
  const Sequence s = take(c, 1000000);
  for (Symbol i = 1; i < 3; ++i) {
    std::int64_t n = 0;
    bool inside = true;
    for (std::size_t y = 1; y <= s.size(); ++y) {
      if (s[y - 1] != i) continue;
      const auto [lo, hi] = SparseColoring::window(p[i], eps, ++n);
      const auto yy = static_cast<std::int64_t>(y);
      if (yy < lo || yy > hi) inside = false;
    }
    CHECK(inside);
    const Sequence head(s.begin(), s.begin() + 100000);
    CHECK(qtest::qr_oracle(head, i) <= Ratio(1) + Ratio(10) * eps);
    for (auto g : qtest::gaps_of(head, i)) {
      CHECK(Ratio(g) >= (Ratio(1) - eps) / p[i] - Ratio(2));
      CHECK(Ratio(g) <= (Ratio(1) + eps) / p[i] + Ratio(2));
    }
  }
  const auto d = empirical_density(s, 3);
  for (Symbol i = 0; i < 3; ++i) CHECK((d[i] - p[i]).abs() <= Ratio(1, 1000));
}

TEST_CASE("sparse coloring preconditions") {
  CHECK_THROWS_AS(SparseColoring(qtest::dist_of({Ratio(9, 10), Ratio(1, 10)}), Ratio(1, 20)),
                  PreconditionError);
  CHECK_THROWS_AS(SparseColoring(qtest::dist_of({Ratio(99, 100), Ratio(1, 100)}), Ratio(1, 10)),
                  PreconditionError);
}

TEST_CASE("expanded sparse coloring") {
  const Dist p = qtest::dist_of({Ratio(97, 100), Ratio(3, 100)});
  const Ratio eps(1, 25);
  const std::int64_t c = 2;
  ExpandedSparseColoring col(p, eps, c);
  const Sequence s = take(col, 100000);
  // minor color only on multiples of c, with QR_1 <= 1 + 10 c eps
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != 0) CHECK((i + 1) % c == 0);
  }
  CHECK(qtest::qr_oracle(s, 1) <= Ratio(1) + Ratio(10 * c) * eps);
  const IncreasingFn f0 = positions_of(s, 0);
  const auto& v = f0.values();
  for (std::int64_t r = c; r < 60; ++r) {
    for (std::size_t k = 0; k + static_cast<std::size_t>(r) < v.size(); k += 7) {
      const std::int64_t d = v[k + static_cast<std::size_t>(r)] - v[k];
      CHECK(d >= r);
      CHECK(Ratio(d) <= Ratio(r * c, c - 1));
    }
  }
  const IncreasingFn f0_head(std::vector<std::int64_t>(v.begin(), v.begin() + 1500));
  CHECK(qr_k(f0_head, c) <= Ratio(1) + Ratio(2, c));
  CHECK_THROWS_AS(ExpandedSparseColoring(p, eps, 1), PreconditionError);
  CHECK_THROWS_AS(ExpandedSparseColoring(p, eps, 3), PreconditionError);
}
