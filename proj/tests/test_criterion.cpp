#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "darboux/criterion.hpp"
#include "testutil.hpp"

using namespace darboux;
using testutil::fe;
using testutil::op;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind;
    }
    throw std::logic_error("expected an error");
}

} // namespace

TEST_CASE("t-free criterion accepts and produces a verified transformation") {
    auto ctx = testutil::xt_ctx();

    // normalized remainder branch
    auto l = op(ctx, "Dx*Dt + t*Dx");
    auto res = tfree_criterion(ctx, l, "t");
    REQUIRE(res.admits);
    REQUIRE(res.decomposition.has_value());
    CHECK(res.decomposition->A == op(ctx, "Dx"));
    CHECK(res.decomposition->c == fe(ctx, "t"));
    CHECK(res.decomposition->B == op(ctx, "Dx"));
    REQUIRE(res.quad.has_value());
    CHECK(res.quad->M == op(ctx, "Dt"));
    CHECK(res.quad->N == op(ctx, "Dt - 1/t"));
    CHECK(format_operator(res.quad->L1) == "Dt*Dx + (-1+t^2)/t*Dx");
    CHECK(dt_verify(ctx, *res.quad));
    // the decomposition really rebuilds L
    CHECK(op_mul(ctx, res.decomposition->A, op(ctx, "Dt")) +
              res.decomposition->c * res.decomposition->B == l);

    // fully factored branch: L = A d_t
    auto l2 = op(ctx, "Dx*Dt + x*Dt");
    auto res2 = tfree_criterion(ctx, l2, "t");
    REQUIRE(res2.admits);
    CHECK(res2.decomposition->B.is_zero());
    CHECK(res2.quad->L1 == op_mul(ctx, op(ctx, "Dt"), op(ctx, "Dx + x")));
    CHECK(res2.quad->N == op(ctx, "Dt"));

    // first-order input with trivial cofactor
    auto res3 = tfree_criterion(ctx, op(ctx, "Dt + Dx"), "t");
    REQUIRE(res3.admits);
    CHECK(res3.quad->L1 == op(ctx, "Dt + Dx"));
}

TEST_CASE("t-free criterion rejects with a pinpointed diagnostic") {
    auto ctx = testutil::xt_ctx();
    auto res = tfree_criterion(ctx, op(ctx, "Dt + Dx^2 + t*Dx"), "t");
    CHECK(!res.admits);
    CHECK(!res.quad.has_value());
    CHECK(res.diagnostic ==
          "normalized remainder has coefficient depending on t: t*Dx");

    CHECK(kind_of([&] { tfree_criterion(ctx, LinOp::zero(), "t"); }) == ErrorKind::ZeroOperator);
    CHECK(kind_of([&] { tfree_criterion(ctx, op(ctx, "Dt"), "z"); }) ==
          ErrorKind::UnknownVariable);
}

TEST_CASE("kernel-gauged criterion: reject and accept") {
    auto ctx = testutil::xt_ctx();

    // psi = t solves L psi = 0, yet no transformation with first-order N exists
    auto l = op(ctx, "Dt + Dx^2 + t*Dx - 1/t");
    CHECK(op_apply(ctx, l, fe(ctx, "t")).is_zero());
    auto res = wronskian_criterion(ctx, l, fe(ctx, "t"), "t");
    CHECK(!res.admits);
    CHECK(res.diagnostic.find("t*Dx") != std::string::npos);

    // factored case: L = (Dx + t)(Dt - 1/t) annihilates t and admits
    auto lf = op(ctx, "Dx*Dt + t*Dt - 1/t*Dx - 1");
    CHECK(lf == op_mul(ctx, op(ctx, "Dx + t"), op(ctx, "Dt - 1/t")));
    CHECK(op_apply(ctx, lf, fe(ctx, "t")).is_zero());
    auto pos = wronskian_criterion(ctx, lf, fe(ctx, "t"), "t");
    REQUIRE(pos.admits);
    CHECK(pos.decomposition->B.is_zero());
    REQUIRE(pos.quad.has_value());
    CHECK(pos.quad->L == lf);
    CHECK(pos.quad->M == op(ctx, "Dt - 1/t"));
    CHECK(dt_verify(ctx, *pos.quad));

    CHECK(kind_of([&] { wronskian_criterion(ctx, lf, FieldElement(), "t"); }) ==
          ErrorKind::ZeroGauge);
    CHECK(kind_of([&] { wronskian_criterion(ctx, lf, fe(ctx, "x"), "t"); }) ==
          ErrorKind::NotInKernel);
}

TEST_CASE("quasi-factorization: found, scaled, gauged, or refused") {
    auto ctx = testutil::xt_ctx();
    auto l = op(ctx, "Dx*Dt + t*Dx");
    auto qf = quasi_factorize(ctx, l, "t");
    REQUIRE(qf.has_value());
    CHECK(qf->C == op(ctx, "Dx"));
    CHECK(qf->c == fe(ctx, "t"));
    CHECK(qf->B == op(ctx, "Dx"));
    CHECK(qf->M == op(ctx, "Dt"));
    CHECK(op_mul(ctx, qf->C, qf->M) + qf->c * qf->B == l);
    CHECK(op_commutator(ctx, qf->M, qf->B).is_zero());

    // scaling L scales the pieces but the decomposition survives
    auto qf5 = quasi_factorize(ctx, fe(ctx, "5") * l, "t");
    REQUIRE(qf5.has_value());
    CHECK(op_mul(ctx, qf5->C, qf5->M) + qf5->c * qf5->B == fe(ctx, "5") * l);

    // with a gauge primitive, M becomes d_t - v_t/v
    auto lf = op(ctx, "Dx*Dt + t*Dt - 1/t*Dx - 1");
    auto qg = quasi_factorize(ctx, lf, "t", fe(ctx, "t"));
    REQUIRE(qg.has_value());
    CHECK(qg->M == op(ctx, "Dt - 1/t"));
    CHECK(op_mul(ctx, qg->C, qg->M) + qg->c * qg->B == lf);

    CHECK(!quasi_factorize(ctx, op(ctx, "Dt + Dx^2 + t*Dx"), "t").has_value());
}

TEST_CASE("classification splits into the three first-order families") {
    auto ctx = testutil::xy_ctx();
    auto m = op(ctx, "Dx");
    auto c_op = op(ctx, "Dy");

    auto fw = classify_first_order(ctx, c_op, m, FieldElement(), LinOp::zero());
    CHECK(fw.tag == FirstOrderTag::FactorizationWronskian);
    CHECK(fw.quad.L == op(ctx, "Dx*Dy"));
    CHECK(fw.quad.L1 == op(ctx, "Dx*Dy"));
    CHECK(fw.quad.N == m);
    CHECK(dt_verify(ctx, fw.quad));

    auto t1 = classify_first_order(ctx, c_op, m, fe(ctx, "x"), LinOp::identity());
    CHECK(t1.tag == FirstOrderTag::TypeI);
    CHECK(t1.quad == type1_build(ctx, c_op, m, fe(ctx, "x")));

    auto wt = classify_first_order(ctx, c_op, m, fe(ctx, "x"), op(ctx, "Dy^2 + 1"));
    CHECK(wt.tag == FirstOrderTag::WronskianType);
    CHECK(wt.quad.N == op(ctx, "Dx - 1/x"));
    CHECK(format_operator(wt.quad.L1) == "Dx*Dy + x*Dy^2 - 1/x*Dy + x");
    CHECK(dt_verify(ctx, wt.quad));

    CHECK(kind_of([&] {
              classify_first_order(ctx, c_op, op(ctx, "Dx^2"), fe(ctx, "x"), LinOp::zero());
          }) == ErrorKind::NotFirstOrder);
    CHECK(kind_of([&] {
              classify_first_order(ctx, c_op, m, fe(ctx, "y"), op(ctx, "Dx + x"));
          }) == ErrorKind::NonCommuting);
}

TEST_CASE("third-order example over an adjoined exponential") {
    FieldContext ctx({"x", "y"}, {"E"}, {});
    ctx.set_adjoined_derivative("E", "y", fe(ctx, "3*E"));

    auto m = op(ctx, "x*Dx + Dy");
    auto c_op = op(ctx,
                   "(1/8)*((1-x)*Dx^2 + (4 + 4/x)*Dx*Dy + (1/x - 1/x^2)*Dy^2"
                   " + (1 + 3/x)*Dx - (2/x + 2/x^2)*Dy)");
    auto b = op(ctx,
                "E/(x^3)*(x^3*Dx^3 - 3*x^2*Dx^2*Dy + 3*x*Dx*Dy^2 - Dy^3"
                " - 3*x^2*Dx^2 + 9*x*Dx*Dy - 6*Dy^2 + 3*x*Dx - 8*Dy)");
    auto c = fe(ctx, "x*(x-1)/(8*E)");

    CHECK(op_commutator(ctx, m, b).is_zero());

    auto fc = classify_first_order(ctx, c_op, m, c, b);
    CHECK(fc.tag == FirstOrderTag::WronskianType);
    CHECK(fc.quad.L == op_mul(ctx, c_op, m) + c * b);
    CHECK(dt_verify(ctx, fc.quad));

    // N = c M c^{-1}; for M with no order-0 part this is M - M(c)/c
    CHECK(fc.quad.N == m - LinOp::scalar(op_apply(ctx, m, c) / c));
    CHECK(format_operator(fc.quad.N) == "x*Dx + Dy + (-2+x)/(-1+x)");

    // the transformed operator admits the same verification
    CHECK(op_mul(ctx, fc.quad.N, fc.quad.L) == op_mul(ctx, fc.quad.L1, fc.quad.M));
}

TEST_CASE("unique determination of N by right-divisibility") {
    auto ctx = testutil::xy_ctx();
    auto p = op(ctx, "Dx + x*Dy");
    auto q = op(ctx, "Dx + 1");
    auto r = op(ctx, "Dx^2 + x*Dx*Dy + Dx + (2+x)*Dy");
    auto qp = op_mul(ctx, q, p);

    CHECK(unique_determination(ctx, r, q));
    CHECK(unique_determination(ctx, qp, q));
    CHECK(!unique_determination(ctx, qp, p)); // Q right-divides

    CHECK(kind_of([&] { unique_determination(ctx, r, op(ctx, "Dx^2")); }) ==
          ErrorKind::NotFirstOrder);
}
