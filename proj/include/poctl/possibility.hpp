#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace poctl {

/// An exact possibility degree in [0,1], stored as a reduced fraction.
///
/// Max-min algebra only ever selects among existing values, so the whole
/// library needs nothing beyond ordering: no value outside the inputs
/// (plus 0 and 1) is ever produced, and equality tests such as "is this
/// degree exactly 1" are sound. There is deliberately no +, -, * or /.
class Possibility {
 public:
  constexpr Possibility() = default;

  Possibility(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("possibility with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (const auto g = std::gcd(num_, den_); g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ < 0 || num_ > den_)
      throw std::invalid_argument("possibility outside [0,1]: " + std::to_string(num) + "/" +
                                  std::to_string(den));
  }

  static Possibility zero() { return Possibility(); }
  static Possibility one() { return Possibility(1, 1); }

  /// Parses a decimal literal ("0", "1", "0.25", ".5") with at most nine
  /// fractional digits, exactly.
  static Possibility parse(std::string_view text) {
    std::size_t pos = 0;
    std::int64_t whole = 0;
    std::size_t whole_digits = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      whole = whole * 10 + (text[pos] - '0');
      if (++whole_digits > 9) throw std::invalid_argument("possibility literal too large");
      ++pos;
    }
    std::int64_t frac = 0;
    std::int64_t scale = 1;
    std::size_t frac_digits = 0;
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        frac = frac * 10 + (text[pos] - '0');
        scale *= 10;
        if (++frac_digits > 9)
          throw std::invalid_argument("more than nine fractional digits in possibility literal");
        ++pos;
      }
    }
    if (pos != text.size() || whole_digits + frac_digits == 0)
      throw std::invalid_argument("malformed possibility literal '" + std::string(text) + "'");
    return Possibility(whole * scale + frac, scale);
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == den_; }

  /// Exact decimal expansion when the reduced denominator is 2^a * 5^b,
  /// otherwise the reduced fraction "n/d".
  std::string str() const {
    std::int64_t d = den_;
    while (d % 2 == 0) d /= 2;
    while (d % 5 == 0) d /= 5;
    if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);
    std::string out = std::to_string(num_ / den_);
    auto r = static_cast<unsigned __int128>(num_ % den_);
    if (r != 0) {
      out += '.';
      while (r != 0) {
        r *= 10;
        out += static_cast<char>('0' + static_cast<int>(r / den_));
        r %= den_;
      }
    }
    return out;
  }

  friend bool operator==(const Possibility& a, const Possibility& b) = default;

  friend std::strong_ordering operator<=>(const Possibility& a, const Possibility& b) {
    const auto lhs = static_cast<__int128>(a.num_) * b.den_;
    const auto rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Possibility& p) { return os << p.str(); }

}  // namespace poctl
