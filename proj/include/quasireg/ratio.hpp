#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace quasireg {

// Exact rational with 64-bit numerator and denominator. Every operation
// widens to 128 bits and throws std::overflow_error when the reduced result
// does not fit back into 64 bits.
class Ratio {
 public:
  constexpr Ratio() = default;
  Ratio(std::int64_t num);  // NOLINT(google-explicit-constructor)
  Ratio(std::int64_t num, std::int64_t den);

  // Parses "a/b", "a" or a finite decimal such as "0.05".
  static Ratio parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Ratio operator-() const;
  Ratio& operator+=(const Ratio& o);
  Ratio& operator-=(const Ratio& o);
  Ratio& operator*=(const Ratio& o);
  Ratio& operator/=(const Ratio& o);

  friend Ratio operator+(Ratio a, const Ratio& b) { return a += b; }
  friend Ratio operator-(Ratio a, const Ratio& b) { return a -= b; }
  friend Ratio operator*(Ratio a, const Ratio& b) { return a *= b; }
  friend Ratio operator/(Ratio a, const Ratio& b) { return a /= b; }

  friend bool operator==(const Ratio& a, const Ratio& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    const __int128 l = static_cast<__int128>(a.num_) * b.den_;
    const __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l < r ? std::strong_ordering::less
                 : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::int64_t floor() const;
  std::int64_t ceil() const;
  Ratio abs() const { return num_ < 0 ? -*this : *this; }
  bool is_integer() const { return den_ == 1; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

 private:
  static Ratio from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Ratio& r);

// 128-bit helpers shared by the integer fast paths.
std::int64_t checked_narrow(__int128 v);
__int128 floor_div(__int128 a, __int128 b);
__int128 ceil_div(__int128 a, __int128 b);
std::int64_t lcm_checked(std::int64_t a, std::int64_t b);

}  // namespace quasireg
