#include "ach/rho_series.hpp"

#include <doctest.h>

using namespace ach;

TEST_CASE("rational series inverse and square root") {
    RatSeries b(6, BigRational(1));
    b.set(2, BigRational(3));
    b.set(5, BigRational(-1, 2));
    RatSeries inv = b.inverse();
    RatSeries prod = b * inv;
    CHECK(prod.at(0) == BigRational(1));
    for (int j = 1; j <= 6; ++j) CHECK(prod.at(j).is_zero());

    RatSeries s = b.sqrt_unit();
    RatSeries sq = s * s;
    for (int j = 0; j <= 6; ++j) CHECK(sq.at(j) == b.at(j));

    RatSeries bad(3, BigRational(0));
    CHECK_THROWS_AS(bad.inverse(), MathError);
    RatSeries bad2(3, BigRational(2));
    CHECK_THROWS_AS(bad2.sqrt_unit(), MathError);
}

TEST_CASE("log derivative of a product splits") {
    RatSeries b(8, BigRational(1));
    b.set(1, BigRational(1, 3));
    RatSeries c(8, BigRational(1));
    c.set(2, BigRational(-2));
    RatSeries lhs = (b * c).log_derivative();
    RatSeries rhs = b.log_derivative() + c.log_derivative();
    for (int j = 0; j <= 8; ++j) CHECK(lhs.at(j) == rhs.at(j));
}

TEST_CASE("rho series arithmetic with log slots") {
    RhoSeries<GaussianRational> s(5, GaussianRational(0));
    s.set_a(1, GaussianRational(3));
    s.set_b(2, GaussianRational(1));  // rho^2 log(rho)

    // rho d_rho: rho^1*3 -> rho^1*3; rho^2 log -> 2 rho^2 log + rho^2
    RhoSeries<GaussianRational> d = s.rho_d_rho();
    CHECK(d.a(1) == GaussianRational(3));
    CHECK(d.a(2) == GaussianRational(1));
    CHECK(d.b(2) == GaussianRational(2));

    RhoSeries<GaussianRational> sh = s.shifted(2);
    CHECK(sh.a(3) == GaussianRational(3));
    CHECK(sh.b(4) == GaussianRational(1));
    CHECK(sh.a(1).is_zero());

    RatSeries m(5, BigRational(1));
    m.set(1, BigRational(2));
    RhoSeries<GaussianRational> prod = s.mul_series(m);
    CHECK(prod.a(1) == GaussianRational(3));
    CHECK(prod.a(2) == GaussianRational(6));
    CHECK(prod.b(2) == GaussianRational(1));
    CHECK(prod.b(3) == GaussianRational(2));

    CHECK(s.vanishes_through(0));
    CHECK_FALSE(s.vanishes_through(1));
    CHECK_FALSE(s.log_free());
}
