#include "ach/rational.hpp"
#include "ach/rng.hpp"

#include <doctest.h>

using namespace ach;

TEST_CASE("rationals reduce to canonical form") {
    BigRational r(BigInt(6), BigInt(-4));
    CHECK(r.num() == BigInt(-3));
    CHECK(r.den() == BigInt(2));
    CHECK(BigRational(BigInt(0), BigInt(7)) == BigRational(0));
    CHECK(BigRational(0).den() == BigInt(1));
}

TEST_CASE("gaussian field operations") {
    GaussianRational a(BigRational(1, 2), BigRational(1));
    CHECK(a * a.conj() == GaussianRational(BigRational(5, 4)));
    CHECK(GaussianRational(1) + GaussianRational(0) == GaussianRational(1));
    GaussianRational q(BigRational(2, 3), BigRational(1, 3));
    CHECK(q / GaussianRational(BigRational(1, 3)) ==
          GaussianRational(BigRational(2), BigRational(1)));
    CHECK(GaussianRational::i() * GaussianRational::i() == GaussianRational(-1));
}

TEST_CASE("division by zero is an explicit error, never a crash") {
    CHECK_THROWS_AS(GaussianRational(1) / GaussianRational(0), DivisionByZero);
    CHECK_THROWS_AS(BigRational(1) / BigRational(0), DivisionByZero);
    CHECK_FALSE(checked_div(BigRational(3), BigRational(0)).has_value());
    auto d = checked_div(GaussianRational(4), GaussianRational(2));
    REQUIRE(d.has_value());
    CHECK(*d == GaussianRational(2));
}

TEST_CASE("field axioms hold exactly on random values") {
    SplitMix64 rng(11);
    for (int t = 0; t < 50; ++t) {
        GaussianRational a = random_gaussian(rng);
        GaussianRational b = random_gaussian(rng);
        GaussianRational c = random_gaussian(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b).conj() == a.conj() * b.conj());
        CHECK(a.conj().conj() == a);
        CHECK_FALSE(a.norm2().is_negative());
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("text round-trip") {
    SplitMix64 rng(12);
    for (int t = 0; t < 40; ++t) {
        GaussianRational a = random_gaussian(rng);
        CHECK(GaussianRational::parse(a.str()) == a);
    }
    CHECK(GaussianRational::parse("-7/3") == GaussianRational(BigRational(-7, 3)));
    CHECK(GaussianRational::parse("(1/2)+(3)i") ==
          GaussianRational(BigRational(1, 2), BigRational(3)));
    CHECK(GaussianRational::parse("(0)-(2/5)i") ==
          GaussianRational(BigRational(0), BigRational(-2, 5)));
    CHECK_THROWS_AS(GaussianRational::parse("1/0"), ParseError);
    CHECK_THROWS_AS(GaussianRational::parse("(1)+(2)j"), ParseError);
}

TEST_CASE("canonical ordering is lexicographic on (re, im)") {
    GaussianRational a(BigRational(1, 2), BigRational(9));
    GaussianRational b(BigRational(2, 3), BigRational(-9));
    CHECK(a < b);
    GaussianRational c(BigRational(1, 2), BigRational(-1));
    CHECK(c < a);
}
