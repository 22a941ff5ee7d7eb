#include "ach/op_poly.hpp"
#include "ach/heisenberg.hpp"

#include <doctest.h>

using namespace ach;

namespace {
OpPoly x() { return OpPoly::term(1, 0, GaussianRational(1)); }
OpPoly y(unsigned e = 1) { return OpPoly::term(0, e, GaussianRational(1)); }
}  // namespace

TEST_CASE("q polynomials: recurrence equals closed form") {
    CHECK(qpoly(1, QMode::Recurrence) == x());
    CHECK(qpoly(2, QMode::Recurrence) == x() * x() - y(2));
    // q_3 = x^3 - 4 x y^2 = x(x + 2y)(x - 2y), evaluated by the recurrence by hand
    CHECK(qpoly(3, QMode::Recurrence) == x() * x() * x() - (x() * y(2)).scaled(GaussianRational(4)));
    for (unsigned k = 1; k <= 12; ++k)
        CHECK(qpoly(k, QMode::Recurrence) == qpoly(k, QMode::ClosedForm));
}

TEST_CASE("gjms product values") {
    CHECK(gjms_product(2, 1) == OpPoly::delta_b());
    CHECK(gjms_product(2, 2) == x() * x() + y(2));
    CHECK_THROWS_AS(gjms_product(2, 4), MathError);
    CHECK_THROWS_AS(gjms_product(2, 0), MathError);
    // n=3, k=4: (Db+3iT)(Db+iT)(Db-iT)(Db-3iT) = (Db^2+9T^2)(Db^2+T^2)
    OpPoly lhs = gjms_product(3, 4);
    OpPoly rhs = (x() * x() + y(2).scaled(GaussianRational(9))) * (x() * x() + y(2));
    CHECK(lhs == rhs);
}

TEST_CASE("substitution x -> Delta_b, y -> iT matches the product") {
    for (int n : {1, 2, 3, 4})
        for (int k = 1; k <= n + 1; ++k)
            CHECK(qpoly(static_cast<unsigned>(k), QMode::ClosedForm).substitute_x_db_y_iT() ==
                  gjms_product(n, k));
}

TEST_CASE("c_k values") {
    CHECK(gjms_ck(1) == GaussianRational(2));
    CHECK(gjms_ck(2) == GaussianRational(-1));
    CHECK(gjms_ck(3) == GaussianRational(BigRational(1, 6)));
}

TEST_CASE("formal adjoint is an involution fixing the gjms products") {
    OpPoly p = OpPoly::term(2, 1, GaussianRational(BigRational(1), BigRational(2))) +
               OpPoly::term(0, 3, GaussianRational(BigRational(-1, 3)));
    CHECK(p.adjoint().adjoint() == p);
    CHECK(OpPoly::iT().adjoint() == OpPoly::iT());
    CHECK(OpPoly::term(0, 1, GaussianRational(1)).adjoint() ==
          OpPoly::term(0, 1, GaussianRational(-1)));
    for (int k = 1; k <= 4; ++k) {
        OpPoly g = gjms_product(3, k);
        CHECK(g.adjoint() == g);
    }
}

TEST_CASE("commutation shift substitutes Delta_b") {
    // (Db + iT) with Db -> Db + 2iT gives Db + 3iT
    OpPoly p = x() + OpPoly::iT();
    CHECK(p.shift_db(BigRational(2)) == x() + OpPoly::iT().scaled(GaussianRational(3)));
    // shifting by +2 then -2 is the identity
    OpPoly q = x() * x() + OpPoly::iT() * x() + y(2);
    CHECK(q.shift_db(BigRational(2)).shift_db(BigRational(-2)) == q);
}

TEST_CASE("operator application agrees with composed field actions") {
    HeisFrame fr(1);
    HeisPoly f = parse_expression("z1*zb1*t", 1);
    OpPoly p = gjms_product(1, 2);  // Db^2 + T^2
    HeisPoly direct = fr.sublaplacian(fr.sublaplacian(f)) + fr.T(fr.T(f));
    CHECK(p.apply(fr, f) == direct);
}
