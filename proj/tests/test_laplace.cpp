#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "darboux/laplace.hpp"
#include "testutil.hpp"

using namespace darboux;
using testutil::fe;
using testutil::op;

namespace {

Schrodinger2D generic(const FieldContext& ctx) {
    return {"x", "y", fe(ctx, "a"), fe(ctx, "b"), fe(ctx, "c")};
}

} // namespace

TEST_CASE("invariants of the generic second-order hyperbolic operator") {
    auto ctx = testutil::jet_ctx();
    auto s = generic(ctx);
    CHECK(schrodinger_op(s) == op(ctx, "Dx*Dy + a*Dx + b*Dy + c"));
    auto inv = laplace_invariants(ctx, s);
    CHECK(format_field_element(inv.h) == "(-c+a_x+a*b)");
    CHECK(format_field_element(inv.k) == "(-c+b_y+a*b)");

    auto back = schrodinger_from(schrodinger_op(s));
    CHECK(back.a == s.a);
    CHECK(back.b == s.b);
    CHECK(back.c == s.c);

    try {
        (void)schrodinger_from(op(ctx, "Dx^2"));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::WrongShape);
    }
}

TEST_CASE("x-direction transformation on the fully generic operator") {
    auto ctx = testutil::jet_ctx();
    auto s = generic(ctx);
    auto l = schrodinger_op(s);
    auto q = laplace_transform(ctx, s, LaplaceDirection::X);
    auto k = laplace_invariants(ctx, s).k;

    CHECK(q.L == l);
    CHECK(q.M == op(ctx, "Dx + b"));
    CHECK(q.N == q.M - LinOp::scalar(fe_derive(ctx, k, "x") / k));
    // intertwining identity, recomputed here
    CHECK(op_mul(ctx, q.N, q.L) == op_mul(ctx, q.L1, q.M));
    CHECK(op_symbol(q.L) == op_symbol(q.L1));

    // the defining exchange property: the h-invariant of the new operator
    // is the k-invariant of the old one
    auto s1 = schrodinger_from(q.L1);
    CHECK(laplace_invariants(ctx, s1).h == k);

    auto qy = laplace_transform(ctx, s, LaplaceDirection::Y);
    CHECK(qy.M == op(ctx, "Dy + a"));
    CHECK(dt_verify(ctx, qy));
    CHECK(laplace_invariants(ctx, schrodinger_from(qy.L1)).k == laplace_invariants(ctx, s).h);
}

TEST_CASE("the transformation is invertible and the witness battery passes") {
    auto ctx = testutil::jet_ctx();
    auto s = generic(ctx);
    auto q = laplace_transform(ctx, s, LaplaceDirection::X);
    auto k = laplace_invariants(ctx, s).k;

    auto w = laplace_inverse(ctx, q, LaplaceDirection::X);
    CHECK(w.A == LinOp::scalar(k.inverse()));
    CHECK(w.B == LinOp::scalar(k.inverse()));
    // one identity recomputed by hand, then the full battery
    CHECK(op_mul(ctx, w.Mp, q.M) == LinOp::identity() + op_mul(ctx, w.A, q.L));
    CHECK(dt_verify_inverse(ctx, q, w));
    // the inverse morphism goes back from L1 to L
    CHECK(op_mul(ctx, w.Np, q.L1) == op_mul(ctx, q.L, w.Mp));
}

TEST_CASE("constant-coefficient fixed point: a = b = 0, c = 1") {
    auto ctx = testutil::xy_ctx();
    Schrodinger2D s{"x", "y", FieldElement(), FieldElement(), FieldElement::from_int(1)};
    auto l = schrodinger_op(s);
    CHECK(l == op(ctx, "Dx*Dy + 1"));
    auto inv = laplace_invariants(ctx, s);
    CHECK(inv.h == fe(ctx, "-1"));
    CHECK(inv.k == fe(ctx, "-1"));

    auto q = laplace_transform(ctx, s, LaplaceDirection::X);
    CHECK(q.M == op(ctx, "Dx"));
    CHECK(q.N == op(ctx, "Dx"));
    CHECK(q.L1 == l); // the operator reproduces itself

    auto w = laplace_inverse(ctx, q, LaplaceDirection::X);
    CHECK(w.A == LinOp::scalar(fe(ctx, "-1")));
    CHECK(w.Mp == -op(ctx, "Dy"));
    CHECK(dt_verify_inverse(ctx, q, w));
}

TEST_CASE("zero invariant blocks the transformation") {
    auto ctx = testutil::xy_ctx();
    Schrodinger2D s{"x", "y", FieldElement(), FieldElement(), FieldElement()};
    try {
        (void)laplace_transform(ctx, s, LaplaceDirection::X);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::ZeroInvariant);
    }
    // k = 0 but h != 0: y-direction still works
    Schrodinger2D t{"x", "y", fe(ctx, "x"), FieldElement(), FieldElement()};
    CHECK(laplace_invariants(ctx, t).k.is_zero());
    CHECK(!laplace_invariants(ctx, t).h.is_zero());
    CHECK_THROWS_AS((void)laplace_transform(ctx, t, LaplaceDirection::X), Error);
    CHECK(dt_verify(ctx, laplace_transform(ctx, t, LaplaceDirection::Y)));
}

TEST_CASE("composing with the mirror direction is multiplication by the invariant") {
    auto ctx = testutil::jet_ctx();
    auto s = generic(ctx);
    auto l = schrodinger_op(s);
    auto inv = laplace_invariants(ctx, s);

    auto cx = laplace_compose_check(ctx, s, LaplaceDirection::X);
    CHECK(dt_verify(ctx, cx.composite));
    CHECK(cx.composite.M == LinOp::scalar(inv.k) + l);
    CHECK(cx.gauge == inv.k.inverse());
    CHECK(cx.composite.L1 == op_conjugate(ctx, l, cx.gauge));

    auto cy = laplace_compose_check(ctx, s, LaplaceDirection::Y);
    CHECK(cy.composite.M == LinOp::scalar(inv.h) + l);
    CHECK(cy.gauge == inv.h.inverse());
    CHECK(cy.composite.L1 == op_conjugate(ctx, l, cy.gauge));
}
