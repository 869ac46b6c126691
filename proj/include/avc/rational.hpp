#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace avc {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Numerator and denominator are 64-bit; every operation is carried out in
/// 128-bit intermediates and reduced before narrowing. A result that does not
/// fit in 64 bits throws std::overflow_error rather than wrapping, so a value
/// that comes out of the exact oracle is either correct or absent.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "p/q", or "p" when the denominator is 1.
  std::string str() const;

  /// Parses "p/q" or "p". Throws std::invalid_argument on malformed input.
  static Rational parse(std::string_view text);

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a);

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Least common multiple of the denominators, throws on overflow.
std::int64_t checked_lcm(std::int64_t a, std::int64_t b);

}  // namespace avc
