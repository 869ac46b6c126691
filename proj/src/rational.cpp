#include "avc/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <ostream>

namespace avc {
namespace {

using wide = __int128;

constexpr wide kMax = std::numeric_limits<std::int64_t>::max();
constexpr wide kMin = std::numeric_limits<std::int64_t>::min();

wide wide_abs(wide v) { return v < 0 ? -v : v; }

wide wide_gcd(wide a, wide b) {
  a = wide_abs(a);
  b = wide_abs(b);
  while (b != 0) {
    wide r = a % b;
    a = b;
    b = r;
  }
  return a;
}

std::int64_t narrow(wide v) {
  if (v > kMax || v < kMin) throw std::overflow_error("rational overflow");
  return static_cast<std::int64_t>(v);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::from_wide(wide num, wide den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  wide g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  Rational r;
  r.num_ = narrow(num);
  r.den_ = narrow(den);
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (o.num_ == 0) return *this;
  if (num_ == 0) return *this = o;
  if (den_ == o.den_) {
    *this = from_wide(static_cast<wide>(num_) + o.num_, den_);
    return *this;
  }
  std::int64_t g = std::gcd(den_, o.den_);
  wide num = static_cast<wide>(num_) * (o.den_ / g) + static_cast<wide>(o.num_) * (den_ / g);
  // Any common factor of num and the full denominator divides g.
  wide g2 = wide_gcd(num, g);
  wide den = static_cast<wide>(den_ / g) * (o.den_ / g2);
  num /= g2;
  num_ = narrow(num);
  den_ = narrow(den);
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  if (num_ == 0 || o.num_ == 0) return *this = Rational{};
  std::int64_t g1 = std::gcd(num_, o.den_);
  std::int64_t g2 = std::gcd(o.num_, den_);
  wide num = static_cast<wide>(num_ / g1) * (o.num_ / g2);
  wide den = static_cast<wide>(den_ / g2) * (o.den_ / g1);
  num_ = narrow(num);
  den_ = narrow(den);
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("rational division by zero");
  Rational inv;
  inv.num_ = o.num_ < 0 ? -o.den_ : o.den_;
  inv.den_ = o.num_ < 0 ? -o.num_ : o.num_;
  return *this *= inv;
}

Rational operator-(const Rational& a) {
  Rational r;
  r.num_ = narrow(-static_cast<wide>(a.num_));
  r.den_ = a.den_;
  return r;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  wide lhs = static_cast<wide>(a.num_) * b.den_;
  wide rhs = static_cast<wide>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size()) {
      throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    }
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  std::int64_t g = std::gcd(a, b);
  return narrow(static_cast<wide>(a / g) * b);
}

}  // namespace avc
