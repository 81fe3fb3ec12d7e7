#include <gtest/gtest.h>

#include <random>

#include "qrg/exactnum.hpp"

using namespace qrg;

TEST(Rational, NormalizesSignAndGcd) {
    rational r(6, -4);
    EXPECT_EQ(r.to_string(), "-3/2");
    EXPECT_EQ(rational(0, 5), rational(0));
    EXPECT_EQ(rational(10, 5).to_string(), "2");
    EXPECT_THROW(rational(1, 0), division_by_zero);
}

TEST(Rational, FieldAxiomsOnRandomValues) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long long> d(-1000, 1000);
    for (int i = 0; i < 500; ++i) {
        long long b = d(rng), e = d(rng);
        if (b == 0) b = 1;
        if (e == 0) e = 3;
        rational x(d(rng), b), y(d(rng), e), z(d(rng), 7);
        EXPECT_EQ(x + y, y + x);
        EXPECT_EQ((x + y) + z, x + (y + z));
        EXPECT_EQ(x * (y + z), x * y + x * z);
        EXPECT_EQ(x - x, rational(0));
        if (!y.is_zero()) EXPECT_EQ((x / y) * y, x);
    }
}

TEST(Rational, PromotesToBigIntegers) {
    rational x(1, 3);
    rational big(1);
    for (int i = 0; i < 40; ++i) big = big * rational(1000003, 7);
    EXPECT_TRUE(big.is_big());
    EXPECT_EQ((big * x) / big, x);
    EXPECT_EQ(big / big, rational(1));
    EXPECT_EQ(rational::parse(big.to_string()), big);
}

TEST(Rational, ParseRoundTripAndErrors) {
    for (const char* s : {"0", "-7", "22/7", "-1/3", "123456789012345678901234567891/7"})
        EXPECT_EQ(rational::parse(s).to_string(), s);
    EXPECT_THROW(rational::parse("1/0"), error);
    EXPECT_THROW(rational::parse("abc"), parse_error);
    EXPECT_THROW(rational::parse(""), parse_error);
}

TEST(Rational, OrderingMatchesCrossMultiplication) {
    EXPECT_LT(rational(1, 3), rational(1, 2));
    EXPECT_LT(rational(-1, 2), rational(-1, 3));
    EXPECT_GT(rational(7), rational(13, 2));
}

TEST(Cyc8, ZetaIsPrimitiveEighthRoot) {
    cyc8 z = cyc8::zeta();
    cyc8 p(1);
    for (int k = 1; k <= 8; ++k) {
        p = p * z;
        EXPECT_EQ(p, cyc8::zeta_pow(k));
        if (k < 8) EXPECT_FALSE(p.is_one());
    }
    EXPECT_TRUE(p.is_one());
    EXPECT_EQ(z * z, cyc8::imag_unit());
    EXPECT_EQ(cyc8::zeta_pow(-1), cyc8::zeta_pow(7));
}

TEST(Cyc8, SqrtTwo) {
    EXPECT_EQ(cyc8::sqrt2() * cyc8::sqrt2(), cyc8(2));
    EXPECT_EQ(cyc8::sqrt2() * cyc8::inv_sqrt2(), cyc8(1));
    // zeta + zeta^-1 = sqrt 2
    EXPECT_EQ(cyc8::zeta() + cyc8::zeta_pow(-1), cyc8::sqrt2());
}

TEST(Cyc8, ConjugationAndInverse) {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<long long> d(-9, 9);
    for (int i = 0; i < 200; ++i) {
        cyc8 a(rational(d(rng), 2), d(rng), rational(d(rng), 3), d(rng));
        cyc8 b(d(rng), d(rng), d(rng), rational(d(rng), 5));
        EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
        EXPECT_EQ(a.conj().conj(), a);
        EXPECT_EQ(a * b, b * a);
        for (int k = -3; k < 10; ++k) EXPECT_EQ(a.times_zeta_pow(k), a * cyc8::zeta_pow(k));
        if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), cyc8(1));
    }
    EXPECT_THROW(cyc8(0).inverse(), division_by_zero);
}

TEST(Cyc8, ParseRoundTrip) {
    cyc8 a(rational(1, 2), -3, 0, rational(-7, 9));
    EXPECT_EQ(cyc8::parse(a.to_string()), a);
    EXPECT_THROW(cyc8::parse("1,2,3"), parse_error);
    EXPECT_THROW(cyc8::parse("1,2,3,4,5"), parse_error);
}
