#include "quasireg/ratio.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <ostream>

namespace quasireg {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

std::int64_t checked_narrow(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("rational arithmetic overflow");
  }
  return static_cast<std::int64_t>(v);
}

__int128 floor_div(__int128 a, __int128 b) {
  if (b < 0) {
    a = -a;
    b = -b;
  }
  __int128 q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

__int128 ceil_div(__int128 a, __int128 b) { return -floor_div(-a, b); }

std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
  const std::int64_t g = std::gcd(a, b);
  return checked_narrow(static_cast<__int128>(a / g) * b);
}

Ratio::Ratio(std::int64_t num) : num_(num), den_(1) {}

Ratio::Ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("zero denominator");
  *this = from_wide(num, den);
}

Ratio Ratio::from_wide(__int128 num, __int128 den) {
  if (den == 0) throw std::domain_error("division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  Ratio r;
  r.num_ = checked_narrow(num);
  r.den_ = checked_narrow(den);
  return r;
}

Ratio Ratio::parse(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty rational");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return Ratio(parse_int(trim(text.substr(0, slash))), parse_int(trim(text.substr(slash + 1))));
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const bool neg = text.front() == '-';
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 17) throw std::invalid_argument("too many decimals");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const std::int64_t w = (whole.empty() || whole == "-") ? 0 : parse_int(whole);
    const std::int64_t f = frac.empty() ? 0 : parse_int(frac);
    const __int128 n = static_cast<__int128>(w < 0 ? -w : w) * scale + f;
    return from_wide(neg ? -n : n, scale);
  }
  return Ratio(parse_int(text));
}

Ratio Ratio::operator-() const { return from_wide(-static_cast<__int128>(num_), den_); }

Ratio& Ratio::operator+=(const Ratio& o) {
  *this = from_wide(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                    static_cast<__int128>(den_) * o.den_);
  return *this;
}

Ratio& Ratio::operator-=(const Ratio& o) { return *this += -o; }

Ratio& Ratio::operator*=(const Ratio& o) {
  // Cross-reduce first so that products of already-reduced fractions stay small.
  const std::int64_t g1 = std::gcd(num_, o.den_);
  const std::int64_t g2 = std::gcd(o.num_, den_);
  const __int128 n = static_cast<__int128>(g1 ? num_ / g1 : num_) * (g2 ? o.num_ / g2 : o.num_);
  const __int128 d = static_cast<__int128>(g2 ? den_ / g2 : den_) * (g1 ? o.den_ / g1 : o.den_);
  *this = from_wide(n, d);
  return *this;
}

Ratio& Ratio::operator/=(const Ratio& o) {
  if (o.num_ == 0) throw std::domain_error("division by zero");
  return *this *= Ratio(o.den_, o.num_);
}

std::int64_t Ratio::floor() const { return checked_narrow(floor_div(num_, den_)); }
std::int64_t Ratio::ceil() const { return checked_narrow(ceil_div(num_, den_)); }

std::string Ratio::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Ratio& r) { return os << r.str(); }

}  // namespace quasireg
