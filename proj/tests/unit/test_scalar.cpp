#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "support/random_cotree.hpp"
#include "threshold/scalar.hpp"

using threshold::FloorResult;
using threshold::ParseError;
using threshold::Scalar;

TEST(ScalarParse, DecimalLiteralsAreExact) {
  EXPECT_EQ(Scalar::from_decimal("4.8"), Scalar(24, 5));
  EXPECT_EQ(Scalar::from_decimal("-3.3"), Scalar(-33, 10));
  EXPECT_EQ(Scalar::from_decimal("+0.5"), Scalar(1, 2));
  EXPECT_EQ(Scalar::from_decimal("1e-9"), Scalar(1, 1'000'000'000));
  EXPECT_EQ(Scalar::from_decimal("2.5E2"), Scalar(250));
  EXPECT_EQ(Scalar::from_decimal(".25"), Scalar(1, 4));
  EXPECT_EQ(Scalar::from_decimal("7."), Scalar(7));
}

TEST(ScalarParse, SeventeenDigitSurrogate) {
  const Scalar n = Scalar::from_decimal("0.20710678118654752");
  EXPECT_EQ(n.numerator(), "647208691207961");
  EXPECT_EQ(n.denominator(), "3125000000000000");
  EXPECT_EQ(n * Scalar(mpq_class(mpz_class("100000000000000000"))), Scalar(mpq_class(mpz_class("20710678118654752"))));
}

TEST(ScalarParse, SurrogateMatchesIndependentSquareRoot) {
  // (sqrt 2 - 1) / 2 truncated to 17 decimals, from an integer square root of 2 * 10^40.
  mpz_class big;
  mpz_ui_pow_ui(big.get_mpz_t(), 10, 40);
  big *= 2;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), big.get_mpz_t());  // floor(sqrt2 * 10^20)
  mpz_class ten20;
  mpz_ui_pow_ui(ten20.get_mpz_t(), 10, 20);
  const mpz_class half = (root - ten20) / 2;  // floor(((sqrt2 - 1)/2) * 10^20), up to 1 ulp
  const mpz_class digits17 = half / 1000;
  EXPECT_EQ(digits17.get_str(), "20710678118654752");

  const Scalar surrogate = Scalar::from_decimal("0.20710678118654752");
  const Scalar exact_lo(mpq_class(half, ten20));
  EXPECT_LT(surrogate, exact_lo);
  EXPECT_LT(exact_lo - surrogate, Scalar(1, 100'000'000'000'000'000LL));
}

TEST(ScalarParse, RationalForm) {
  EXPECT_EQ(Scalar::parse("24/5"), Scalar(24, 5));
  EXPECT_EQ(Scalar::parse("-6/4"), Scalar(-3, 2));
  EXPECT_EQ(Scalar::parse("4.8"), Scalar(24, 5));
}

TEST(ScalarParse, MalformedLiteralsReportPosition) {
  for (const char* bad : {"", "-", "1.2.3", "abc", "4.8x", "1e", "1e+", "--1", "."}) {
    EXPECT_THROW(Scalar::from_decimal(bad), ParseError) << bad;
  }
  try {
    Scalar::from_decimal("12x");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
  EXPECT_THROW(Scalar::parse("1/0"), ParseError);
  EXPECT_THROW(Scalar::parse("1.5/2"), ParseError);
}

TEST(ScalarCanonical, ReducedWithPositiveDenominator) {
  const Scalar s(6, -4);
  EXPECT_EQ(s.numerator(), "-3");
  EXPECT_EQ(s.denominator(), "2");
  EXPECT_EQ(s.to_string(), "-3/2");
  EXPECT_EQ(Scalar(10, 5).to_string(), "2");
  EXPECT_THROW(Scalar(1, 0), std::domain_error);
}

TEST(ScalarArithmetic, ExactOperations) {
  const Scalar a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, Scalar(1, 2));
  EXPECT_EQ(a - b, Scalar(1, 6));
  EXPECT_EQ(a * b, Scalar(1, 18));
  EXPECT_EQ(a / b, Scalar(2));
  EXPECT_EQ(-a, Scalar(-1, 3));
  EXPECT_THROW(a / Scalar(0), std::domain_error);
  // 0.1 + 0.2 == 0.3 exactly, unlike binary floats
  EXPECT_EQ(Scalar::from_decimal("0.1") + Scalar::from_decimal("0.2"), Scalar::from_decimal("0.3"));
}

TEST(ScalarOrdering, TotalOrder) {
  EXPECT_LT(Scalar(-1, 2), Scalar(0));
  EXPECT_GT(Scalar(2, 3), Scalar(3, 5));
  EXPECT_EQ(Scalar(2, 4) <=> Scalar(1, 2), std::strong_ordering::equal);
  EXPECT_EQ(Scalar(-5).sign(), -1);
  EXPECT_EQ(Scalar(0).sign(), 0);
}

TEST(ScalarFloor, Examples) {
  EXPECT_EQ(threshold::floor_plus_one(Scalar::from_decimal("5.8")), 6);
  EXPECT_EQ(threshold::floor_plus_one(Scalar(144)), 145);
  EXPECT_EQ(threshold::floor_plus_one(Scalar::from_decimal("-0.5")), 0);
  EXPECT_EQ(threshold::floor_plus_one(Scalar(-3)), -2);

  FloorResult f = threshold::floor_of(Scalar(144));
  EXPECT_TRUE(f.is_exact_integer);
  EXPECT_EQ(f.floor, 144);
  f = threshold::floor_of(Scalar(-1, 2));
  EXPECT_FALSE(f.is_exact_integer);
  EXPECT_EQ(f.floor, -1);
}

TEST(ScalarFloor, FloorPlusOneStrictlyExceedsInput) {
  threshold::testing::Rng rng(7);
  for (int i = 0; i < 5000; ++i) {
    const Scalar x = threshold::testing::random_rational(rng, 1000, 50);
    const auto k = threshold::floor_plus_one(x);
    EXPECT_GT(Scalar(k), x);
    EXPECT_LE(Scalar(k - 1), x);  // and it is the smallest such integer
  }
}

TEST(ScalarDyadic, MidpointsStayDyadic) {
  Scalar lo(0), hi(306);
  for (int i = 0; i < 60; ++i) {
    const Scalar mid = threshold::midpoint(lo, hi);
    ASSERT_TRUE(mid.is_dyadic());
    EXPECT_EQ(mid, (lo + hi) / Scalar(2));
    (i % 3 == 0 ? lo : hi) = mid;
  }
  EXPECT_FALSE(Scalar(1, 3).is_dyadic());
  EXPECT_TRUE(Scalar(5).is_dyadic());
}

TEST(ScalarConversion, LongDoubleIsCorrectlyTruncated) {
  EXPECT_EQ(Scalar(1, 2).to_long_double(), 0.5L);
  EXPECT_EQ(Scalar(-3).to_long_double(), -3.0L);
  EXPECT_EQ(Scalar(0).to_long_double(), 0.0L);
  const long double third = Scalar(1, 3).to_long_double();
  EXPECT_NEAR(static_cast<double>(third * 3.0L - 1.0L), 0.0, 1e-18);
  EXPECT_DOUBLE_EQ(Scalar(24, 5).to_double(), 4.8);

  threshold::testing::Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const Scalar x = threshold::testing::random_rational(rng, 1'000'000, 1'000'003);
    const long double v = x.to_long_double();
    const long double expect =
        static_cast<long double>(x.raw().get_num().get_si()) / static_cast<long double>(x.raw().get_den().get_si());
    EXPECT_LE(std::fabs(v - expect), std::fabs(expect) * 4 * std::numeric_limits<long double>::epsilon());
  }
}
