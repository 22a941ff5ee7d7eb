#include "ach/frame_geometry.hpp"
#include "ach/rng.hpp"

#include <doctest.h>

using namespace ach;

TEST_CASE("frame index naming round-trips") {
    FrameIndexing ix(3);
    for (int p = 0; p < ix.count(); ++p) {
        CHECK(ix.parse_name(ix.name(p)) == p);
        CHECK(ix.conj(ix.conj(p)) == p);
    }
    CHECK(ix.name(0) == "t");
    CHECK(ix.name(4) == "bt");
    CHECK(ix.name(1) == "1");
    CHECK(ix.name(5) == "b1");
}

TEST_CASE("koszul christoffel symbols match the tabulated boundary values") {
    for (int n : {1, 2, 3}) {
        FrameGeometry geo(n);
        Report rep = geo.check_christoffel();
        for (const auto& c : rep.checks) {
            INFO(c.detail);
            CHECK(c.passed);
        }
        const FrameIndexing& ix = geo.ix();
        CHECK(geo.christoffel(ix.tau(), ix.tau(), ix.tau()) == GaussianRational(-1));
        CHECK(geo.christoffel(ix.tau(), ix.taubar(), ix.tau()) == GaussianRational(1));
        CHECK(geo.christoffel(ix.hol(1), ix.hol(1), ix.tau()) == GaussianRational(-1));
        CHECK(geo.christoffel(ix.tau(), ix.holbar(1), ix.hol(1)) ==
              GaussianRational(BigRational(1, 2)));
        CHECK(geo.christoffel(ix.hol(1), ix.tau(), ix.hol(1)) ==
              GaussianRational(BigRational(-1, 2)));
        if (n >= 2) CHECK(geo.christoffel(ix.hol(1), ix.hol(2), ix.hol(1)).is_zero());
    }
}

TEST_CASE("einstein and curvature identities") {
    for (int n : {1, 2, 3, 4}) {
        FrameGeometry geo(n);
        Report rep = geo.einstein_check();
        for (const auto& c : rep.checks) {
            INFO(c.id);
            CHECK(c.passed);
        }
        CHECK(geo.scalar_curvature() ==
              GaussianRational(static_cast<long>(-(n + 1) * (n + 2))));
    }
}

TEST_CASE("christoffel table is conjugation-equivariant") {
    for (int n : {1, 2, 3}) {
        FrameGeometry geo(n);
        const FrameIndexing& ix = geo.ix();
        for (int r = 0; r < ix.count(); ++r)
            for (int p = 0; p < ix.count(); ++p)
                for (int q = 0; q < ix.count(); ++q)
                    CHECK(geo.christoffel(ix.conj(r), ix.conj(p), ix.conj(q)) ==
                          geo.christoffel(r, p, q).conj());
    }
}

TEST_CASE("metric is parallel and divergence-free") {
    for (int n : {1, 2}) {
        FrameGeometry geo(n);
        FrameTensor g = geo.metric_tensor(3);
        CHECK(geo.covariant_derivative(g).is_zero());
        CHECK(geo.divergence(g).is_zero());
        FrameSeries tr = geo.trace(g);
        // g^{PQ} g_{PQ} = dim = 2n+2
        CHECK(tr.a(0) == HeisPoly::constant(n, GaussianRational(2 * n + 2)));
    }
}

TEST_CASE("frame action implements the Theta-frame realization") {
    const int n = 2;
    FrameGeometry geo(n);
    const FrameIndexing& ix = geo.ix();
    HeisFrame fr(n);
    FrameSeries s(6, HeisPoly(n));
    s.set_a(2, parse_expression("z1*t", n));

    // Z_tau = (1/2) rho d_rho + i rho^2 T
    FrameSeries zt = geo.frame_apply(ix.tau(), s);
    CHECK(zt.a(2) == parse_expression("z1*t", n));  // (1/2)*2 = 1 times the slot
    CHECK(zt.a(4) == fr.T(parse_expression("z1*t", n)).scaled(GaussianRational::i()));

    // Z_a = rho * (horizontal field): shifts the order up by one
    FrameSeries za = geo.frame_apply(ix.hol(1), s);
    CHECK(za.a(3) == fr.Z(1, parse_expression("z1*t", n)));
    CHECK(za.a(2).is_zero());
}

TEST_CASE("log slots differentiate with the unit leak") {
    const int n = 1;
    FrameGeometry geo(n);
    FrameSeries s(4, HeisPoly(n));
    s.set_b(2, HeisPoly::constant(n, GaussianRational(1)));  // rho^2 log rho
    FrameSeries d = geo.frame_apply(geo.ix().tau(), s);
    // (1/2) rho d_rho (rho^2 log rho) = rho^2 log rho + (1/2) rho^2
    CHECK(d.b(2) == HeisPoly::constant(n, GaussianRational(1)));
    CHECK(d.a(2) == HeisPoly::constant(n, GaussianRational(BigRational(1, 2))));
}

TEST_CASE("covariant derivative reproduces the tabulated leading behavior") {
    const int n = 2;
    FrameGeometry geo(n);
    const FrameIndexing& ix = geo.ix();

    // mu = dual of Z_tau slot: nabla_tau mu_tau = mu_tau, nabla_b mu_tau = mu_b
    FrameTensor mu(n, 1, 4);
    FrameSeries one(4, HeisPoly(n));
    one.set_a(0, HeisPoly::constant(n, GaussianRational(1)));
    mu.set({ix.tau()}, one);
    FrameSeries zser(4, HeisPoly(n));
    zser.set_a(0, parse_expression("z1", n));
    mu.set({ix.hol(1)}, zser);
    FrameTensor grad = geo.covariant_derivative(mu);
    CHECK(grad.at({ix.tau(), ix.tau()}) == one);
    CHECK(grad.at({ix.hol(1), ix.tau()}) == zser);  // = mu_1 exactly
    CHECK(grad.at({ix.hol(2), ix.tau()}).is_zero());
}

TEST_CASE("divergence of a pure tau-tau slot matches the channel formula") {
    const int n = 2;
    FrameGeometry geo(n);
    const FrameIndexing& ix = geo.ix();
    for (int j : {1, 3}) {
        FrameTensor sigma(n, 2, 6);
        FrameSeries s(6, HeisPoly(n));
        s.set_a(j, HeisPoly::constant(n, GaussianRational(1)));
        sigma.set({ix.tau(), ix.tau()}, s);
        FrameTensor div = geo.divergence(sigma);
        FrameSeries expect(6, HeisPoly(n));
        expect.set_a(j, HeisPoly::constant(n, GaussianRational(BigRational(-(j - 2 * n - 4), 4))));
        CHECK(div.at({ix.tau()}) == expect);
        for (int a = 1; a <= n; ++a) CHECK(div.at({ix.hol(a)}).is_zero());
    }
}

TEST_CASE("reality is preserved by the geometry operators") {
    const int n = 2;
    FrameGeometry geo(n);
    const FrameIndexing& ix = geo.ix();
    SplitMix64 rng(31337);
    FrameTensor holo(n, 2, 5);
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
            FrameSeries s(5, HeisPoly(n));
            HeisPoly p = random_heis_poly(rng, n, 2, 2);
            s.set_a(static_cast<int>(rng.below(3)), p);
            holo.at({ix.hol(a), ix.hol(b)}) += s;
            holo.at({ix.hol(b), ix.hol(a)}) += s;
        }
    FrameTensor sigma = holo;
    sigma += holo.conjugated();
    REQUIRE(sigma == sigma.conjugated());
    FrameTensor lich = geo.lichnerowicz_apply(sigma);
    CHECK(lich == lich.conjugated());
    FrameTensor div = geo.divergence(sigma);
    CHECK(div == div.conjugated());
}
