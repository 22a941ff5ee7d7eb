#include "ach/nc_normal.hpp"
#include "ach/rng.hpp"

#include <doctest.h>

using namespace ach;

namespace {

OpPoly db() { return OpPoly::delta_b(); }
OpPoly iT(long c = 1) { return OpPoly::iT().scaled(GaussianRational(c)); }

TensorPoly random_psi(SplitMix64& rng, int n) {
    TensorPoly psi(Channel::Sym2, n);
    for (int a = 1; a <= n; ++a)
        for (int b = a; b <= n; ++b) psi.set_sym(a, b, random_heis_poly(rng, n, 2, 2));
    return psi;
}

OpPoly random_op_poly(SplitMix64& rng) {
    OpPoly p = OpPoly::constant(random_gaussian(rng));
    if (rng.below(2)) p += OpPoly::term(1, 0, random_gaussian(rng));
    if (rng.below(2)) p += OpPoly::term(0, 1, random_gaussian(rng));
    if (p.is_zero()) p = OpPoly::one();
    return p;
}

NcExpr random_word(SplitMix64& rng, int n, int max_len) {
    NcExpr e{n, {}, NcSource::PsiDeformation};
    int free_indices = 2;
    int len = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_len)));
    for (int i = 0; i < len; ++i) {
        switch (rng.below(3)) {
            case 0:
                e.steps.insert(e.steps.begin(), random_op_poly(rng));
                break;
            case 1:
                if (free_indices >= 1) {
                    e.steps.insert(e.steps.begin(), NcContract{});
                    --free_indices;
                }
                break;
            default:
                if (free_indices <= 1) {
                    e.steps.insert(e.steps.begin(), NcInsert{});
                    ++free_indices;
                }
                break;
        }
    }
    return e;
}

}  // namespace

TEST_CASE("rewrite rules match the displayed identities") {
    const int n = 2;
    // Z^a applied after Delta_b on the vector channel: (Db - 2iT) passes left
    NcExpr lhs{n, {NcContract{}, db(), NcContract{}}, NcSource::PsiDeformation};
    NcExpr rhs{n, {db() - iT(2), NcContract{}, NcContract{}}, NcSource::PsiDeformation};
    CHECK(nc_normalize(lhs) == nc_normalize(rhs));

    // Z^b Z_(a (Z.psi)_b) = -1/4 (Db - i(n+2)T)(Z.psi)_a + 1/2 Z_a(Z.Z.psi)
    NcExpr word{n, {NcContract{}, NcInsert{}, NcContract{}}, NcSource::PsiDeformation};
    NcNormal expect(n, Channel::Vector);
    expect.add(Shape::DivPsi, (db() - iT(n + 2)).scaled(GaussianRational(BigRational(-1, 4))));
    expect.add(Shape::ZdivdivPsi, OpPoly::constant(GaussianRational(BigRational(1, 2))));
    CHECK(nc_normalize(word) == expect);

    // Z^a Z_a on the scalar channel: -1/2 (Db - inT)
    NcExpr scal{n, {NcContract{}, NcInsert{}, NcContract{}, NcContract{}},
                NcSource::PsiDeformation};
    NcNormal expect2(n, Channel::Scalar);
    expect2.add(Shape::DivDivPsi, (db() - iT(n)).scaled(GaussianRational(BigRational(-1, 2))));
    CHECK(nc_normalize(scal) == expect2);
}

TEST_CASE("normalization is sound against direct evaluation") {
    for (int n : {1, 2, 3}) {
        HeisFrame fr(n);
        SplitMix64 rng(7000 + n);
        for (int t = 0; t < 12; ++t) {
            NcExpr e = random_word(rng, n, 5);
            TensorPoly psi = random_psi(rng, n);
            NcNormal nf = nc_normalize(e);
            CHECK(nc_apply(nf, psi, fr) == nc_direct_eval(e, psi, fr));
        }
    }
}

TEST_CASE("every contraction rule is validated by sampling") {
    for (int n : {1, 2, 3}) {
        HeisFrame fr(n);
        SplitMix64 rng(7100 + n);
        for (Shape s : {Shape::Psi, Shape::ZsymDivPsi, Shape::ZZdivdivPsi, Shape::DivPsi,
                        Shape::ZdivdivPsi}) {
            NcExpr word = shape_word(n, s);
            word.steps.insert(word.steps.begin(), NcContract{});
            NcNormal nf = nc_normalize(word);
            for (int t = 0; t < 5; ++t) {
                TensorPoly psi = random_psi(rng, n);
                CHECK(nc_apply(nf, psi, fr) == nc_direct_eval(word, psi, fr));
            }
        }
    }
}

TEST_CASE("normalization is idempotent and linear") {
    const int n = 2;
    SplitMix64 rng(7800);
    for (int t = 0; t < 8; ++t) {
        NcExpr e = random_word(rng, n, 5);
        NcNormal nf = nc_normalize(e);
        // replay each term's shape word under its polynomial: the identity
        NcNormal replay(n, nf.channel(), nf.source());
        for (const auto& [s, p] : nf.terms()) {
            NcExpr w = shape_word(n, s);
            w.steps.insert(w.steps.begin(), p);
            replay += nc_normalize(w);
        }
        CHECK(replay == nf);

        GaussianRational lam = random_gaussian(rng);
        NcExpr scaled_word = e;
        scaled_word.steps.insert(scaled_word.steps.begin(), OpPoly::constant(lam));
        CHECK(nc_normalize(scaled_word) == nf.scaled(lam));
    }
}

TEST_CASE("leaving the closed basis is a hard error") {
    const int n = 2;
    NcNormal id = NcNormal::identity(n);
    CHECK_THROWS_AS(id.insert(), BasisOverflow);
    CHECK_THROWS_AS(id.contract().contract().contract(), BasisOverflow);
}

TEST_CASE("nc_apply on pinned examples") {
    SplitMix64 rng(7900);
    TensorPoly psi = random_psi(rng, 2);
    HeisFrame fr2(2);
    CHECK(nc_apply(NcNormal::identity(2), psi, fr2) == psi);

    // psi_11 = zb1 zb1 at n = 1:  Z.Z.psi = Zb Zb (zb1^2) ... = 2
    HeisFrame fr1(1);
    TensorPoly p1(Channel::Sym2, 1);
    p1.set_sym(1, 1, parse_expression("zb1^2", 1));
    NcNormal divdiv(1, Channel::Scalar);
    divdiv.add(Shape::DivDivPsi, OpPoly::one());
    TensorPoly r = nc_apply(divdiv, p1, fr1);
    CHECK(r.scalar() == parse_expression("2", 1));
}

TEST_CASE("closed-form obstruction coefficients") {
    NcNormal o2 = obstruction_closed_form(2);
    GaussianRational pref(BigRational(-1, 4));
    CHECK(o2.terms().at(Shape::Psi) == obstruction_factor_product(2, 3).scaled(pref));
    CHECK(o2.terms().at(Shape::ZsymDivPsi) ==
          obstruction_factor_product(2, 2).scaled(pref * GaussianRational(3)));
    CHECK(o2.terms().at(Shape::ZZdivdivPsi) ==
          obstruction_factor_product(2, 1).scaled(pref * GaussianRational(2)));

    NcNormal o3 = obstruction_closed_form(3);
    GaussianRational pref3(BigRational(1, 36));
    CHECK(o3.terms().at(Shape::Psi) == obstruction_factor_product(3, 4).scaled(pref3));
    CHECK(o3.terms().at(Shape::ZsymDivPsi) ==
          obstruction_factor_product(3, 3).scaled(pref3 * GaussianRational(BigRational(16, 5))));
    CHECK(o3.terms().at(Shape::ZZdivdivPsi) ==
          obstruction_factor_product(3, 2).scaled(pref3 * GaussianRational(BigRational(12, 5))));
    CHECK_THROWS_AS(obstruction_closed_form(1), MathError);
}

TEST_CASE("kuranishi substitution pulls operators back to scalar data") {
    for (int n : {2, 3}) {
        HeisFrame fr(n);
        SplitMix64 rng(8000 + n);
        for (int t = 0; t < 6; ++t) {
            NcExpr e = random_word(rng, n, 4);
            NcNormal op = nc_normalize(e);
            NcNormal sub = substitute_kuranishi(op);
            HeisPoly f = random_heis_poly(rng, n, 2, 2);
            TensorPoly df(Channel::Sym2, n);
            for (int a = 1; a <= n; ++a)
                for (int b = a; b <= n; ++b) df.set_sym(a, b, fr.Z(a, fr.Z(b, f)));
            TensorPoly fscalar(Channel::Scalar, n);
            fscalar.set_scalar(f);
            CHECK(nc_apply(sub, fscalar, fr) == nc_apply(op, df, fr));
        }
    }
}
