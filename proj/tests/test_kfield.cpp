#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"

using namespace darboux;
using testutil::fe;

namespace {

FieldContext exp_ctx() {
    FieldContext ctx({"x", "y"}, {"E"}, {});
    ctx.set_adjoined_derivative("E", "y", fe(ctx, "3*E"));
    return ctx;
}

} // namespace

TEST_CASE("rational arithmetic reduces to canonical form") {
    auto ctx = testutil::xy_ctx();
    CHECK(fe(ctx, "1/3 + 1/6") == fe(ctx, "1/2"));
    CHECK(fe(ctx, "x/x").is_one());
    CHECK(fe(ctx, "x^2 - x*x").is_zero());
    CHECK(fe(ctx, "(x^2 - y^2)/(x + y)") == fe(ctx, "x - y"));
    CHECK(fe(ctx, "(x^2 - 1)/(x - 1)") == fe(ctx, "x + 1"));
    CHECK(FieldElement::from_int(0) == FieldElement());
}

TEST_CASE("denominators are primitive with positive leading coefficient") {
    auto ctx = testutil::xy_ctx();
    auto a = fe(ctx, "x/(-2*y)");
    CHECK(a.den() == fe(ctx, "y").num());
    CHECK(a.num().leading_coeff() == Rat(-1, 2));
    auto b = fe(ctx, "(3*x)/(3/2*y)"); // scale moves entirely into the numerator
    CHECK(b.den() == fe(ctx, "y").num());
    CHECK(b.num() == fe(ctx, "2*x").num());
}

TEST_CASE("results stay fully reduced") {
    auto ctx = testutil::xy_ctx();
    testutil::Rng r(101);
    for (int i = 0; i < 60; ++i) {
        auto a = r.elem(ctx);
        auto b = r.elem(ctx);
        for (const auto& v : {a + b, a - b, a * b}) {
            CHECK(poly_gcd(v.num(), v.den()).is_constant());
            CHECK(prim_scale(v.den()) == Rat(1));
        }
        auto g = r.nonzero_poly_elem(ctx, 1);
        CHECK((a * g) / g == a);
        CHECK(FieldElement::fraction(a.num() * g.num(), a.den() * g.num()) == a);
    }
}

TEST_CASE("field axioms hold on random elements") {
    auto ctx = testutil::xy_ctx();
    testutil::Rng r(7);
    for (int i = 0; i < 100; ++i) {
        auto a = r.elem(ctx), b = r.elem(ctx), c = r.elem(ctx);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - b) + b == a);
        if (!a.is_zero()) {
            CHECK(a * a.inverse() == FieldElement::from_int(1));
            CHECK(b / a * a == b);
        }
    }
}

TEST_CASE("division by zero throws") {
    auto ctx = testutil::xy_ctx();
    try {
        (void)fe(ctx, "1/(x - x)");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::DivisionByZero);
    }
    CHECK_THROWS_AS(FieldElement::from_int(0).inverse(), Error);
}

TEST_CASE("adjoined exponential: derivative table and arithmetic") {
    auto ctx = exp_ctx();
    CHECK(fe(ctx, "x*(x-1)/(8*E) + x/(8*E)") == fe(ctx, "x^2/(8*E)"));
    auto e = fe(ctx, "E");
    CHECK(fe_derive(ctx, e, "y") == fe(ctx, "3*E"));
    CHECK(fe_derive(ctx, e, "x").is_zero());
    CHECK(fe_derive(ctx, e.inverse(), "y") == fe(ctx, "-3/E"));
    CHECK(fe_derive(ctx, e * e, "y") == fe(ctx, "6*E^2"));
    CHECK(fe_derive(ctx, fe(ctx, "x*E"), "y") == fe(ctx, "3*x*E"));
}

TEST_CASE("derivations satisfy linearity and the Leibniz rule") {
    auto ctx = testutil::jet_ctx();
    testutil::Rng r(19);
    auto a0 = fe(ctx, "a"), b0 = fe(ctx, "b");
    for (int i = 0; i < 60; ++i) {
        auto f = r.elem(ctx) * a0 + r.elem(ctx);
        auto g = r.elem(ctx) * b0 + r.elem(ctx, 1);
        for (const std::string v : {"x", "y"}) {
            CHECK(fe_derive(ctx, f + g, v) == fe_derive(ctx, f, v) + fe_derive(ctx, g, v));
            CHECK(fe_derive(ctx, f * g, v) ==
                  fe_derive(ctx, f, v) * g + f * fe_derive(ctx, g, v));
            if (!g.is_zero()) {
                auto q = f / g;
                CHECK(fe_derive(ctx, q, v) * g * g ==
                      fe_derive(ctx, f, v) * g - f * fe_derive(ctx, g, v));
            }
        }
        CHECK(fe_derive(ctx, FieldElement::from_int(5), "x").is_zero());
    }
}

TEST_CASE("mixed partials commute, including jets and adjoined symbols") {
    auto jctx = testutil::jet_ctx();
    testutil::Rng r(23);
    for (int i = 0; i < 40; ++i) {
        auto f = r.elem(jctx) * fe(jctx, "a") + r.elem(jctx) * fe(jctx, "b_x") + r.elem(jctx);
        CHECK(fe_derive(jctx, fe_derive(jctx, f, "x"), "y") ==
              fe_derive(jctx, fe_derive(jctx, f, "y"), "x"));
    }
    auto ectx = exp_ctx();
    auto g = fe(ectx, "x*E + y/E");
    CHECK(fe_derive(ectx, fe_derive(ectx, g, "x"), "y") ==
          fe_derive(ectx, fe_derive(ectx, g, "y"), "x"));
}

TEST_CASE("jet spellings are canonical: derive twice in either order") {
    auto ctx = testutil::jet_ctx();
    auto a = fe(ctx, "a");
    auto axy = fe_derive(ctx, fe_derive(ctx, a, "y"), "x");
    CHECK(axy == fe(ctx, "a_xy"));
    CHECK(axy == fe_derive(ctx, fe_derive(ctx, a, "x"), "y"));
    CHECK(fe_derive(ctx, fe(ctx, "a_x"), "x") == fe(ctx, "a_xx"));
}

TEST_CASE("linear_solve finds solutions and detects inconsistency") {
    auto ctx = testutil::xy_ctx();
    testutil::Rng r(31);
    for (int i = 0; i < 40; ++i) {
        int n = r.irange(1, 3);
        std::vector<std::vector<FieldElement>> a(n, std::vector<FieldElement>(n));
        std::vector<FieldElement> xs(n);
        for (int j = 0; j < n; ++j) {
            xs[j] = r.elem(ctx, 1);
            for (int k = 0; k < n; ++k) a[j][k] = r.elem(ctx, 1);
        }
        std::vector<FieldElement> b(n);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) b[j] = b[j] + a[j][k] * xs[k];
        auto sol = linear_solve(a, b);
        REQUIRE(sol.has_value());
        for (int j = 0; j < n; ++j) {
            FieldElement lhs;
            for (int k = 0; k < n; ++k) lhs = lhs + a[j][k] * (*sol)[k];
            CHECK(lhs == b[j]);
        }
    }

    auto one = FieldElement::from_int(1);
    std::vector<std::vector<FieldElement>> bad{{one, one}, {one, one}};
    CHECK(!linear_solve(bad, {FieldElement::from_int(0), one}).has_value());

    std::vector<std::vector<FieldElement>> wide{{one, one}};
    auto s = linear_solve(wide, {one});
    REQUIRE(s.has_value());
    CHECK((*s)[0] + (*s)[1] == one);
}
