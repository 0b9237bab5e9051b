#include "darboux/criterion.hpp"

#include "darboux/text.hpp"

namespace darboux {

namespace {

// First coefficient of a nonzero operator in display order (largest
// multi-index): the reference used to normalize the non-divisible part.
FieldElement reference_coefficient(const LinOp& x) {
    if (x.is_zero()) fail(ErrorKind::ZeroOperator, "zero operator has no reference coefficient");
    return x.terms.rbegin()->second;
}

// Multi-index of a coefficient of B that depends on t, if any.
std::optional<MultiIndex> t_dependent_term(const FieldContext& ctx, const LinOp& b,
                                           const std::string& t) {
    for (const auto& [m, coeff] : b.terms)
        if (!fe_derive(ctx, coeff, t).is_zero()) return m;
    return std::nullopt;
}

} // namespace

CriterionResult tfree_criterion(const FieldContext& ctx, const LinOp& l, const std::string& t) {
    if (!ctx.has_variable(t)) fail(ErrorKind::UnknownVariable, "unknown variable: " + t);
    if (l.is_zero()) fail(ErrorKind::ZeroOperator, "criterion needs a nonzero operator");
    const LinOp dt = LinOp::derivation(t, 1);
    auto [a, rest] = op_tdivide(ctx, l, t);

    CriterionResult res;
    if (rest.is_zero()) {
        // L = A d_t factors outright; N = d_t works with trivial remainder.
        res.admits = true;
        res.decomposition = CriterionDecomposition{a, FieldElement::from_int(1), LinOp::zero()};
        DTQuad quad{l, op_mul(ctx, dt, a), dt, dt};
        check_identity(dt_verify(ctx, quad), "factored operator must verify");
        res.quad = quad;
        return res;
    }

    const FieldElement c = reference_coefficient(rest);
    const LinOp b = c.inverse() * rest;
    res.decomposition = CriterionDecomposition{a, c, b};

    if (auto bad = t_dependent_term(ctx, b, t)) {
        res.admits = false;
        const LinOp offending = LinOp::term(b.coeff(*bad), *bad);
        res.diagnostic = "normalized remainder has coefficient depending on " + t + ": " +
                         format_operator(offending);
        return res;
    }

    res.admits = true;
    const LinOp n = op_conjugate(ctx, dt, c.inverse()); // c d_t c^-1 = d_t - c_t/c
    const LinOp l1 = op_mul(ctx, n, a) + c * b;
    DTQuad quad{l, l1, dt, n};
    check_identity(dt_verify(ctx, quad), "t-free remainder must yield a valid transformation");
    res.quad = quad;
    return res;
}

CriterionResult wronskian_criterion(const FieldContext& ctx, const LinOp& l,
                                    const FieldElement& psi, const std::string& t) {
    if (psi.is_zero()) fail(ErrorKind::ZeroGauge, "kernel element must be nonzero");
    if (!op_apply(ctx, l, psi).is_zero())
        fail(ErrorKind::NotInKernel, "psi is not in the kernel of L");

    const LinOp gauged = op_conjugate(ctx, l, psi); // psi^-1 L psi
    CriterionResult inner = tfree_criterion(ctx, gauged, t);

    // Transport everything back through the gauge: X -> psi X psi^-1.
    const FieldElement inv = psi.inverse();
    auto back = [&](const LinOp& x) { return op_conjugate(ctx, x, inv); };

    CriterionResult res;
    res.admits = inner.admits;
    res.diagnostic = inner.diagnostic;
    if (inner.decomposition)
        res.decomposition = CriterionDecomposition{back(inner.decomposition->A),
                                                   inner.decomposition->c,
                                                   back(inner.decomposition->B)};
    if (inner.quad) {
        DTQuad quad{l, back(inner.quad->L1), back(inner.quad->M), back(inner.quad->N)};
        check_identity(dt_verify(ctx, quad), "gauged transformation must verify");
        res.quad = quad;
    }
    return res;
}

std::optional<QuasiFactorization> quasi_factorize(const FieldContext& ctx, const LinOp& l,
                                                  const std::string& t,
                                                  const std::optional<FieldElement>& v) {
    if (!ctx.has_variable(t)) fail(ErrorKind::UnknownVariable, "unknown variable: " + t);
    if (l.is_zero()) fail(ErrorKind::ZeroOperator, "cannot quasi-factorize the zero operator");
    if (v && v->is_zero()) fail(ErrorKind::ZeroGauge, "gauge element must be nonzero");

    const LinOp work = v ? op_conjugate(ctx, l, *v) : l;
    auto [a, rest] = op_tdivide(ctx, work, t);

    FieldElement c = FieldElement::from_int(1);
    LinOp b = LinOp::zero();
    if (!rest.is_zero()) {
        c = reference_coefficient(rest);
        b = c.inverse() * rest;
        if (t_dependent_term(ctx, b, t)) return std::nullopt;
    }

    const LinOp dt = LinOp::derivation(t, 1);
    QuasiFactorization qf;
    if (v) {
        const FieldElement inv = v->inverse();
        qf.C = op_conjugate(ctx, a, inv);
        qf.B = op_conjugate(ctx, b, inv);
        qf.M = op_conjugate(ctx, dt, inv);
    } else {
        qf.C = a;
        qf.B = b;
        qf.M = dt;
    }
    qf.c = c;

    check_identity(op_mul(ctx, qf.C, qf.M) + qf.c * qf.B == l, "quasi-factorization must rebuild L");
    check_identity(op_commutator(ctx, qf.M, qf.B).is_zero(), "B must commute with M");
    return qf;
}

FirstOrderClass classify_first_order(const FieldContext& ctx, const LinOp& c_op, const LinOp& m,
                                     const FieldElement& c, const LinOp& b) {
    const auto ord = m.order();
    if (!ord || *ord != 1) fail(ErrorKind::NotFirstOrder, "M must have order exactly 1");
    if (!op_commutator(ctx, m, b).is_zero())
        fail(ErrorKind::NonCommuting, "B must commute with M");

    const LinOp cb = c * b;
    const LinOp l = op_mul(ctx, c_op, m) + cb;

    FirstOrderClass out;
    out.C = c_op;
    out.c = c;
    out.B = b;

    if (cb.is_zero()) {
        out.tag = FirstOrderTag::FactorizationWronskian;
        out.quad = DTQuad{l, op_mul(ctx, m, c_op), m, m};
    } else {
        out.tag = (*cb.order() == 0) ? FirstOrderTag::TypeI : FirstOrderTag::WronskianType;
        const LinOp n = op_conjugate(ctx, m, c.inverse()); // c M c^-1
        out.quad = DTQuad{l, op_mul(ctx, n, c_op) + cb, m, n};
    }
    check_identity(dt_verify(ctx, out.quad), "classified decomposition must verify");
    return out;
}

bool unique_determination(const FieldContext& ctx, const LinOp& l, const LinOp& m) {
    const auto ord = m.order();
    if (!ord || *ord != 1) fail(ErrorKind::NotFirstOrder, "M must have order exactly 1");
    return !op_right_divide(ctx, l, m).has_value();
}

} // namespace darboux
