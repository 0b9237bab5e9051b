#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"

using namespace darboux;
using testutil::fe;
using testutil::op;

TEST_CASE("products obey the Leibniz rule: hand-expanded cases") {
    auto ctx = testutil::jet_ctx();

    // (Dy + a)(Dx + b) = Dx*Dy + a*Dx + b*Dy + (b_y + a*b)
    auto lhs = op_mul(ctx, op(ctx, "Dy + a"), op(ctx, "Dx + b"));
    LinOp expected;
    expected.add_term(MultiIndex::of("x") + MultiIndex::of("y"), FieldElement::from_int(1));
    expected.add_term(MultiIndex::of("x"), fe(ctx, "a"));
    expected.add_term(MultiIndex::of("y"), fe(ctx, "b"));
    expected.add_term(MultiIndex{}, fe(ctx, "b_y") + fe(ctx, "a") * fe(ctx, "b"));
    CHECK(lhs == expected);

    // Dx^2 . x = x*Dx^2 + 2*Dx
    auto xy = testutil::xy_ctx();
    auto d2x = op_mul(xy, LinOp::derivation("x", 2), LinOp::scalar(fe(xy, "x")));
    LinOp exp2;
    exp2.add_term(MultiIndex::of("x", 2), fe(xy, "x"));
    exp2.add_term(MultiIndex::of("x"), FieldElement::from_int(2));
    CHECK(d2x == exp2);

    CHECK(op_commutator(xy, LinOp::derivation("x"), LinOp::scalar(fe(xy, "x"))) ==
          LinOp::identity());
}

TEST_CASE("ring laws on random operators") {
    auto ctx = testutil::xy_ctx();
    testutil::Rng r(41);
    for (int i = 0; i < 100; ++i) {
        auto a = r.linop(ctx, 2), b = r.linop(ctx, 2), c = r.linop(ctx, 2);
        CHECK(op_mul(ctx, op_mul(ctx, a, b), c) == op_mul(ctx, a, op_mul(ctx, b, c)));
        CHECK(op_mul(ctx, a, b + c) == op_mul(ctx, a, b) + op_mul(ctx, a, c));
        CHECK(op_mul(ctx, a + b, c) == op_mul(ctx, a, c) + op_mul(ctx, b, c));
    }
}

TEST_CASE("principal symbol is multiplicative, order is additive") {
    auto ctx = testutil::xy_ctx();
    testutil::Rng r(43);
    for (int i = 0; i < 100; ++i) {
        auto a = r.linop(ctx, 2), b = r.linop(ctx, 2);
        auto ab = op_mul(ctx, a, b);
        CHECK(op_symbol(ab) == op_symbol(a) * op_symbol(b));
        REQUIRE(ab.order().has_value());
        CHECK(*ab.order() == *a.order() + *b.order());
    }
    CHECK(!LinOp::zero().order().has_value());
    CHECK(*LinOp::identity().order() == 0);
    CHECK_THROWS_AS(op_symbol(LinOp::zero()), Error);
}

TEST_CASE("applying a product composes the applications") {
    auto ctx = testutil::xy_ctx();
    CHECK(op_apply(ctx, op(ctx, "Dx^2 + x*Dy"), fe(ctx, "x^3 + y")) == fe(ctx, "7*x"));
    testutil::Rng r(47);
    for (int i = 0; i < 60; ++i) {
        auto a = r.linop(ctx, 2), b = r.linop(ctx, 2);
        auto f = r.elem(ctx);
        CHECK(op_apply(ctx, op_mul(ctx, a, b), f) == op_apply(ctx, a, op_apply(ctx, b, f)));
    }
}

TEST_CASE("gauge conjugation is a ring homomorphism") {
    auto ctx = testutil::xy_ctx();
    CHECK(op_conjugate(ctx, LinOp::derivation("x"), fe(ctx, "x")) == op(ctx, "Dx + 1/x"));
    testutil::Rng r(53);
    for (int i = 0; i < 50; ++i) {
        auto a = r.linop(ctx, 2), b = r.linop(ctx, 2);
        auto g = r.nonzero_elem(ctx, 1);
        CHECK(op_conjugate(ctx, op_mul(ctx, a, b), g) ==
              op_mul(ctx, op_conjugate(ctx, a, g), op_conjugate(ctx, b, g)));
        CHECK(op_conjugate(ctx, a + b, g) ==
              op_conjugate(ctx, a, g) + op_conjugate(ctx, b, g));
        CHECK(op_conjugate(ctx, op_conjugate(ctx, a, g), g.inverse()) == a);
    }
}

TEST_CASE("splitting off one derivation is exact and the rest is clean") {
    auto ctx = testutil::xt_ctx();
    testutil::Rng r(59);
    for (int i = 0; i < 100; ++i) {
        auto l = r.linop(ctx, 3);
        auto [a, rest] = op_tdivide(ctx, l, "t");
        CHECK(op_mul(ctx, a, LinOp::derivation("t")) + rest == l);
        for (const auto& [mi, c] : rest.terms) {
            (void)c;
            CHECK(mi.exponent("t") == 0);
        }
    }
}

TEST_CASE("right division recovers the unique cofactor or reports none") {
    auto ctx = testutil::xy_ctx();
    auto p = op(ctx, "Dx + x*Dy");
    auto q = op(ctx, "Dx + 1");
    auto rr = op(ctx, "Dx^2 + x*Dx*Dy + Dx + (2+x)*Dy");

    // R is Q*P plus a first-order defect; nothing right-divides it by Q or P
    CHECK(!op_right_divide(ctx, rr, q).has_value());
    CHECK(!op_right_divide(ctx, rr, p).has_value());
    auto qp = op_mul(ctx, q, p);
    auto back = op_right_divide(ctx, qp, p);
    REQUIRE(back.has_value());
    CHECK(*back == q);

    testutil::Rng r(61);
    for (int i = 0; i < 50; ++i) {
        auto a0 = r.linop(ctx, 2);
        auto l = r.linop_of_order(ctx, 1);
        auto x = op_mul(ctx, a0, l);
        auto d = op_right_divide(ctx, x, l);
        REQUIRE(d.has_value());
        CHECK(*d == a0);
    }
}

TEST_CASE("wronskian operators annihilate their seeds and are monic") {
    auto ctx = testutil::xt_ctx();
    std::vector<FieldElement> seeds{FieldElement::from_int(1), fe(ctx, "t")};
    auto w = wronskian_operator(ctx, seeds, "t");
    CHECK(w == LinOp::derivation("t", 2));
    for (const auto& s : seeds) CHECK(op_apply(ctx, w, s).is_zero());

    std::vector<FieldElement> seeds2{fe(ctx, "t"), fe(ctx, "t^2 + 1"), fe(ctx, "t^3")};
    auto w2 = wronskian_operator(ctx, seeds2, "t");
    REQUIRE(w2.order().has_value());
    CHECK(*w2.order() == 3);
    CHECK(w2.coeff(MultiIndex::of("t", 3)).is_one());
    for (const auto& s : seeds2) CHECK(op_apply(ctx, w2, s).is_zero());

    try {
        wronskian_operator(ctx, {fe(ctx, "t"), fe(ctx, "2*t")}, "t");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::SingularWronskian);
    }

    FieldContext ectx({"x", "y"}, {"E"}, {});
    ectx.set_adjoined_derivative("E", "y", fe(ectx, "3*E"));
    CHECK(wronskian_operator(ectx, {fe(ectx, "E")}, "y") == op(ectx, "Dy - 3"));
}

TEST_CASE("determinants over the field") {
    auto ctx = testutil::xy_ctx();
    auto d = fe_det({{fe(ctx, "1"), fe(ctx, "2")}, {fe(ctx, "3"), fe(ctx, "4")}});
    CHECK(d == fe(ctx, "-2"));
    CHECK(fe_det({{fe(ctx, "x")}}) == fe(ctx, "x"));
    auto singular = fe_det({{fe(ctx, "x"), fe(ctx, "y")}, {fe(ctx, "2*x"), fe(ctx, "2*y")}});
    CHECK(singular.is_zero());
}
