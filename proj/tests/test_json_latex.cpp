#include "ach/json_io.hpp"
#include "ach/latex.hpp"
#include "ach/lichnerowicz.hpp"
#include "ach/rng.hpp"
#include "ach/scalar_laplacian.hpp"

#include <doctest.h>

using namespace ach;

TEST_CASE("scalar JSON uses decimal strings and round-trips") {
    GaussianRational v(BigRational(BigInt("123456789012345678901234567891"), BigInt(7)),
                       BigRational(-2, 3));
    Json j = to_json(v);
    CHECK(j["re"][0].get<std::string>() == "123456789012345678901234567891");
    CHECK(j["re"][1].get<std::string>() == "7");
    CHECK(gaussian_from_json(j) == v);
}

TEST_CASE("operator JSON round-trips") {
    SplitMix64 rng(2024);
    for (int n : {1, 2, 3}) {
        for (int k = 1; k <= n + 1; ++k) {
            OpPoly p = gjms_product(n, k);
            CHECK(op_poly_from_json(to_json(p, n)) == p);
        }
    }
    for (int n : {2, 3}) {
        NcNormal op = obstruction_closed_form(n);
        CHECK(nc_normal_from_json(to_json(op)) == op);
    }
    for (int t = 0; t < 5; ++t) {
        HeisPoly p = random_heis_poly(rng, 2, 4, 3);
        CHECK(heis_poly_from_json(to_json(p), 2) == p);
    }
}

TEST_CASE("profile JSON reading") {
    Json j = Json::parse(R"({"n":2,"b":[[6,"3/5"]],"c":[[2,"-1/2"]]})");
    VolumeProfile prof = profile_from_json(j, 10);
    CHECK(prof.n == 2);
    CHECK(prof.b.at(6) == BigRational(3, 5));
    CHECK(prof.c.at(2) == BigRational(-1, 2));
    CHECK(prof.b.at(0) == BigRational(1));
    CHECK(prof.b.max_order() >= 10);
    // writer/reader agreement
    VolumeProfile back = profile_from_json(to_json(prof), prof.b.max_order());
    CHECK(back.b.at(6) == BigRational(3, 5));
    CHECK(back.c.at(2) == BigRational(-1, 2));
}

TEST_CASE("linear factorization recovers the product forms") {
    for (int n : {2, 3}) {
        for (int k = 1; k <= n + 1; ++k) {
            auto f = factor_linear(gjms_product(n, k));
            REQUIRE(f.has_value());
            CHECK(f->scalar == GaussianRational(1));
            CHECK(static_cast<int>(f->ts.size()) == k);
            // factor multiset is {k-1-2j}
            std::vector<long> expect;
            for (int j = 0; j < k; ++j) expect.push_back(k - 1 - 2 * j);
            std::sort(expect.rbegin(), expect.rend());
            CHECK(f->ts == expect);
        }
    }
    // a polynomial that genuinely does not factor through the linear family
    OpPoly p = OpPoly::term(2, 0, GaussianRational(1)) + OpPoly::term(0, 1, GaussianRational(1));
    CHECK_FALSE(factor_linear(p).has_value());
}

TEST_CASE("latex and text emitters") {
    CHECK(latex(gjms_product(2, 1)) == "\\Delta_b");
    CHECK(latex(gjms_product(2, 2)) == "(\\Delta_b+iT)(\\Delta_b-iT)");
    OpPoly expanded = OpPoly::term(2, 0, GaussianRational(1)) +
                      OpPoly::term(0, 2, GaussianRational(1)) +
                      OpPoly::term(0, 0, GaussianRational(1));
    CHECK(latex(expanded) == "\\Delta_b^2+T^2+1");
    CHECK(pretty_text(gjms_product(2, 1)) == "Δ_b");
    // obstruction factored rendering mentions each shape tag once
    std::string s = pretty_text(obstruction_closed_form(2));
    CHECK(s.find("psi") != std::string::npos);
    CHECK(s.find("ZsymDivPsi") != std::string::npos);
    CHECK(s.find("ZZdivdivPsi") != std::string::npos);
}

TEST_CASE("frame tensor dump uses index-tuple keys") {
    FrameGeometry geo(1);
    FrameTensor g = geo.metric_tensor(0);
    Json j = to_json(g);
    CHECK(j["components"].contains("t,bt"));
    CHECK(j["components"].contains("1,b1"));
    CHECK_FALSE(j["components"].contains("t,t"));
}

TEST_CASE("report JSON carries id, identity and status") {
    Report rep;
    rep.add("x.y", "1 = 1", true);
    rep.add("x.z", "2 = 3", false, "difference 1");
    Json j = to_json(rep);
    CHECK(j["passed"] == false);
    CHECK(j["checks"][0]["id"] == "x.y");
    CHECK(j["checks"][0]["status"] == "pass");
    CHECK(j["checks"][1]["detail"] == "difference 1");
}
