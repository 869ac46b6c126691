#include <doctest.h>

#include <limits>
#include <stdexcept>

#include <boost/rational.hpp>

#include "avc/rational.hpp"
#include "avc/rng.hpp"

using avc::Rational;

TEST_CASE("rationals are kept reduced with a positive denominator") {
  const Rational r(6, -8);
  CHECK(r.num() == -3);
  CHECK(r.den() == 4);
  CHECK(r.str() == "-3/4");
  CHECK(Rational(4, 2).str() == "2");
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("parse reads integers and fractions and rejects junk") {
  CHECK(Rational::parse("3/12") == Rational(1, 4));
  CHECK(Rational::parse("-5") == Rational(-5));
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("0.25"));
  CHECK_THROWS(Rational::parse(""));
  CHECK_THROWS(Rational::parse("1/2x"));
}

TEST_CASE("arithmetic matches boost::rational on random operands") {
  avc::Rng rng(12345);
  auto pick = [&] {
    const auto num = static_cast<std::int64_t>(rng.uniform_below(2001)) - 1000;
    const auto den = static_cast<std::int64_t>(rng.uniform_below(999)) + 1;
    return std::pair{num, den};
  };
  for (int i = 0; i < 2000; ++i) {
    const auto [an, ad] = pick();
    const auto [bn, bd] = pick();
    const Rational a(an, ad), b(bn, bd);
    const boost::rational<std::int64_t> ba(an, ad), bb(bn, bd);
    auto same = [](const Rational& x, const boost::rational<std::int64_t>& y) {
      return x.num() == y.numerator() && x.den() == y.denominator();
    };
    CHECK(same(a + b, ba + bb));
    CHECK(same(a - b, ba - bb));
    CHECK(same(a * b, ba * bb));
    if (bn != 0) CHECK(same(a / b, ba / bb));
    CHECK((a < b) == (ba < bb));
    CHECK((a == b) == (ba == bb));
  }
}

TEST_CASE("overflow is reported instead of wrapping") {
  const Rational big(std::numeric_limits<std::int64_t>::max() / 2 + 1);
  CHECK_THROWS_AS(big + big, std::overflow_error);
  CHECK_THROWS_AS(big * Rational(3), std::overflow_error);
  CHECK_THROWS_AS(avc::checked_lcm(std::int64_t{1} << 40, (std::int64_t{1} << 40) - 1), std::overflow_error);
  CHECK(avc::checked_lcm(4, 6) == 12);
}
