#include "ach/volume.hpp"
#include "ach/rng.hpp"
#include "ach/scalar_laplacian.hpp"

#include <doctest.h>

using namespace ach;

TEST_CASE("flat volume expansion") {
    for (int n : {1, 2, 3}) {
        VolumeExpansion v = volume_coeffs(VolumeProfile::flat(n, 2 * n + 4));
        CHECK(v.log_coeff.is_zero());
        REQUIRE(v.c.count(-2 * n - 2) == 1);
        CHECK(v.c.at(-2 * n - 2) == BigRational(1, n + 1));
        CHECK(v.c.size() == 1);
    }
}

TEST_CASE("log coefficient reads the critical density coefficient") {
    const int n = 2;
    BigRational a(4, 9);
    RatSeries b(2 * n + 4, BigRational(1));
    b.set(2 * n + 2, a);
    VolumeProfile prof(n, b, RatSeries(2 * n + 4, BigRational(1)));
    VolumeExpansion v = volume_coeffs(prof);
    // sqrt(1 + a rho^{2n+2}) = 1 + (a/2) rho^{2n+2} + ..., so L = 2 * a/2 = a
    CHECK(v.log_coeff == a);
    // the divergent coefficients are untouched
    CHECK(v.c.at(-2 * n - 2) == BigRational(1, n + 1));
}

TEST_CASE("sqrt and powers feed the density exactly") {
    const int n = 2;
    RatSeries b(2 * n + 4, BigRational(1));
    b.set(3, BigRational(2));  // odd perturbation that pairs: 3 + 3 = 2n+2
    VolumeProfile prof(n, b, RatSeries(2 * n + 4, BigRational(1)));
    // sqrt(1 + 2 rho^3) = 1 + rho^3 - (1/2) rho^6 + ...; L = 2 * (-1/2) = -1
    CHECK(volume_coeffs(prof).log_coeff == BigRational(-1));
    // the identity with the Q pipeline still holds
    CHECK(total_q_check(prof).all_passed());
}

TEST_CASE("total Q identity on the worked and random profiles") {
    const int n = 2;
    {
        BigRational a(-3, 8);
        RatSeries b(2 * n + 6, BigRational(1));
        b.set(2 * n + 2, a);
        VolumeProfile prof(n, b, RatSeries(2 * n + 6, BigRational(1)));
        VolumeExpansion v = volume_coeffs(prof);
        CHECK(v.log_coeff == a);
        CHECK(total_q_check(prof).all_passed());
    }
    SplitMix64 rng(99);
    for (int t = 0; t < 4; ++t) {
        RatSeries b(2 * n + 6, BigRational(1)), c(2 * n + 6, BigRational(1));
        for (int j = 1; j <= 2 * n + 2; ++j) {
            if (rng.below(2))
                b.set(j, BigRational(static_cast<long>(rng.below(7)) - 3,
                                     1 + static_cast<long>(rng.below(3))));
            if (rng.below(2))
                c.set(j, BigRational(static_cast<long>(rng.below(7)) - 3,
                                     1 + static_cast<long>(rng.below(3))));
        }
        VolumeProfile prof(n, b, c);
        CHECK(total_q_check(prof).all_passed());
    }
}

TEST_CASE("frozen log coefficients for quadratic profiles at n = 2") {
    // Hand-derived through the volume route L = -2 B|_M per unit volume.
    const int n = 2;
    {
        // c = 1 + a rho^2, b = 1: the density (1 + a rho^2)^2 has no rho^6
        // term, so L = 0 and the order-by-order solve must give B|_M = 0.
        BigRational a(1);
        RatSeries c(2 * n + 6, BigRational(1));
        c.set(2, a);
        VolumeProfile prof(n, RatSeries(2 * n + 6, BigRational(1)), c);
        CHECK(volume_coeffs(prof).log_coeff.is_zero());
        CHECK(solve_log(prof.laplacian(), 2 * n + 6).b0.is_zero());
        CHECK(total_q_check(prof).all_passed());
    }
    {
        // b = 1 + a rho^2, c = 1 with a = 1: sqrt(b) carries rho^6 coefficient
        // a^3/16, so L = a^3/8 and B|_M = -a^3/16; the series solve reproduces
        // it through the mu-coupling (a_2 = a/8, a_4 = -3a^2/32 en route).
        RatSeries b(2 * n + 6, BigRational(1));
        b.set(2, BigRational(1));
        VolumeProfile prof(n, b, RatSeries(2 * n + 6, BigRational(1)));
        CHECK(volume_coeffs(prof).log_coeff == BigRational(1, 8));
        LogResult lr = solve_log(prof.laplacian(), 2 * n + 6);
        CHECK(lr.b0 == GaussianRational(BigRational(-1, 16)));
        CHECK(lr.full.a(2) == GaussianRational(BigRational(1, 8)));
        CHECK(lr.full.a(4) == GaussianRational(BigRational(-3, 32)));
        CHECK(total_q_check(prof).all_passed());
    }
}

TEST_CASE("total Q identity at n = 3") {
    const int n = 3;
    RatSeries b(2 * n + 6, BigRational(1)), c(2 * n + 6, BigRational(1));
    b.set(2, BigRational(1, 2));
    c.set(4, BigRational(-2, 3));
    CHECK(total_q_check(VolumeProfile(n, b, c)).all_passed());
}

TEST_CASE("sign of Q alternates with the dimension parity") {
    BigRational a(1, 2);
    auto q_for = [&](int n) {
        RatSeries b(2 * n + 6, BigRational(1));
        b.set(2 * n + 2, a);
        return q_curvature(ScalarLaplacian(n, b, RatSeries(2 * n + 6, BigRational(1))));
    };
    BigRational q2 = q_for(2), q3 = q_for(3);
    CHECK(q2.is_negative());
    CHECK(!q3.is_negative());
}

TEST_CASE("profile preconditions") {
    RatSeries bad(6, BigRational(2));
    CHECK_THROWS_AS(VolumeProfile(2, bad, RatSeries(6, BigRational(1))), MathError);
    CHECK_THROWS_AS(volume_coeffs(VolumeProfile::flat(2, 3)), MathError);
}
