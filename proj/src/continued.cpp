#include "darboux/continued.hpp"

namespace darboux {

LinOp Chain::tail_op() const {
    if (const auto* s = std::get_if<ScalarTail>(&tail)) return LinOp::scalar(s->f);
    const auto& c = std::get<CommutingTail>(tail);
    return c.c * c.B;
}

Chain make_chain(const FieldContext& ctx, std::vector<LinOp> a, std::vector<LinOp> m,
                 std::variant<ScalarTail, CommutingTail> tail) {
    if (a.empty() || a.size() != m.size())
        fail(ErrorKind::UsageError, "chain needs equally many A_i and M_i, at least one each");
    for (const auto& op : a)
        if (op.is_zero()) fail(ErrorKind::ZeroOperator, "chain A_i must be nonzero");
    for (const auto& op : m)
        if (op.is_zero()) fail(ErrorKind::ZeroOperator, "chain M_i must be nonzero");

    if (const auto* s = std::get_if<ScalarTail>(&tail)) {
        if (s->f.is_zero()) fail(ErrorKind::ZeroF, "scalar tail must be nonzero");
    } else {
        const auto& c = std::get<CommutingTail>(tail);
        if (c.c.is_zero()) fail(ErrorKind::ZeroF, "commuting tail scalar must be nonzero");
        auto ord = c.B.order();
        if (!ord || *ord < 1)
            fail(ErrorKind::UsageError, "commuting tail needs B of order at least 1");
        if (!op_commutator(ctx, m.back(), c.B).is_zero())
            fail(ErrorKind::NonCommutingTail, "tail B does not commute with M_k");
    }

    Chain ch{std::move(a), std::move(m), std::move(tail)};
    // interior recursion relations M_{i-1} = A_i M_i + M_{i+1}, i = 2..k
    const int k = ch.k();
    for (int i = k; i >= 2; --i) {
        LinOp next = i == k ? ch.tail_op() : ch.M[static_cast<std::size_t>(i)];
        LinOp expect = op_mul(ctx, ch.A[static_cast<std::size_t>(i - 1)],
                              ch.M[static_cast<std::size_t>(i - 1)]) + next;
        if (!(ch.M[static_cast<std::size_t>(i - 2)] == expect))
            fail(ErrorKind::ChainMismatch, "chain recursion fails at position " + std::to_string(i));
    }
    return ch;
}

DTQuad type1_build(const FieldContext& ctx, const LinOp& c, const LinOp& m,
                   const FieldElement& f) {
    if (f.is_zero()) fail(ErrorKind::ZeroF, "type I needs nonzero f");
    LinOp l = op_mul(ctx, c, m) + LinOp::scalar(f);
    LinOp n = op_conjugate(ctx, m, f.inverse()); // f m f^{-1}
    LinOp l1 = op_mul(ctx, n, c) + LinOp::scalar(f);
    DTQuad q{l, l1, m, n};
    check_identity(dt_verify(ctx, q), "type I quad");
    return q;
}

ContinuedBuild continued_build(const FieldContext& ctx, const Chain& ch) {
    const int k = ch.k();
    std::vector<LinOp> mseq(static_cast<std::size_t>(k) + 2), nseq(static_cast<std::size_t>(k) + 2);
    for (int i = 1; i <= k; ++i) mseq[static_cast<std::size_t>(i)] = ch.M[static_cast<std::size_t>(i - 1)];
    mseq[static_cast<std::size_t>(k + 1)] = ch.tail_op();
    mseq[0] = op_mul(ctx, ch.A[0], mseq[1]) + mseq[2];

    nseq[static_cast<std::size_t>(k + 1)] = mseq[static_cast<std::size_t>(k + 1)];
    FieldElement conj = std::holds_alternative<ScalarTail>(ch.tail)
                            ? std::get<ScalarTail>(ch.tail).f
                            : std::get<CommutingTail>(ch.tail).c;
    nseq[static_cast<std::size_t>(k)] =
        op_conjugate(ctx, mseq[static_cast<std::size_t>(k)], conj.inverse());
    for (int i = k - 1; i >= 0; --i)
        nseq[static_cast<std::size_t>(i)] =
            op_mul(ctx, nseq[static_cast<std::size_t>(i + 1)], ch.A[static_cast<std::size_t>(i)]) +
            nseq[static_cast<std::size_t>(i + 2)];

    DTQuad q{mseq[0], nseq[0], mseq[1], nseq[1]};
    check_identity(dt_verify(ctx, q), "continued chain quad");
    return {q, std::move(mseq), std::move(nseq)};
}

ContinuedInverse continued_inverse(const FieldContext& ctx, const Chain& ch) {
    const auto* st = std::get_if<ScalarTail>(&ch.tail);
    if (!st) fail(ErrorKind::NotScalarTail, "inverse construction needs a scalar tail");
    const FieldElement& f = st->f;
    const int k = ch.k();
    const std::size_t uk = static_cast<std::size_t>(k);

    // P_0 = 1, P_1 = A_1, P_{i+1} = P_i A_{i+1} + P_{i-1}; P' mirrors on the left
    std::vector<LinOp> p(uk + 1), pp(uk + 1);
    p[0] = pp[0] = LinOp::identity();
    if (k >= 1) p[1] = pp[1] = ch.A[0];
    for (int i = 1; i < k; ++i) {
        p[static_cast<std::size_t>(i + 1)] =
            op_mul(ctx, p[static_cast<std::size_t>(i)], ch.A[static_cast<std::size_t>(i)]) +
            p[static_cast<std::size_t>(i - 1)];
        pp[static_cast<std::size_t>(i + 1)] =
            op_mul(ctx, ch.A[static_cast<std::size_t>(i)], pp[static_cast<std::size_t>(i)]) +
            pp[static_cast<std::size_t>(i - 1)];
    }

    // R_1 = 1, R_2 = A_2, R_{i+1} = R_i A_{i+1} + R_{i-1}; R' mirrors
    std::vector<LinOp> r(uk), rp(uk); // element j holds R_{j+1}
    r[0] = rp[0] = LinOp::identity();
    if (k >= 2) r[1] = rp[1] = ch.A[1];
    for (int i = 2; i < k; ++i) {
        r[static_cast<std::size_t>(i)] =
            op_mul(ctx, r[static_cast<std::size_t>(i - 1)], ch.A[static_cast<std::size_t>(i)]) +
            r[static_cast<std::size_t>(i - 2)];
        rp[static_cast<std::size_t>(i)] =
            op_mul(ctx, ch.A[static_cast<std::size_t>(i)], rp[static_cast<std::size_t>(i - 1)]) +
            rp[static_cast<std::size_t>(i - 2)];
    }

    FieldElement sgn = FieldElement::from_int(k % 2 == 0 ? 1 : -1);
    FieldElement finv = f.inverse();
    LinOp scale_left = LinOp::scalar(sgn * finv);
    LinOp scale_right = LinOp::scalar(sgn * finv);
    InverseWitness w{
        op_mul(ctx, scale_left, pp[uk]),          // (-1)^k f^{-1} P'_k
        op_mul(ctx, p[uk], scale_right),          // (-1)^k P_k f^{-1}
        op_mul(ctx, scale_left, rp[uk - 1]),      // (-1)^k f^{-1} R'_k
        op_mul(ctx, r[uk - 1], scale_right),      // (-1)^k R_k f^{-1}
    };

    ContinuedBuild built = continued_build(ctx, ch);
    for (int i = 0; i < k; ++i)
        check_identity(op_mul(ctx, p[static_cast<std::size_t>(i)], pp[static_cast<std::size_t>(i + 1)]) ==
                           op_mul(ctx, p[static_cast<std::size_t>(i + 1)], pp[static_cast<std::size_t>(i)]),
                       "P_i P'_{i+1} = P_{i+1} P'_i");
    for (int i = 1; i <= k; ++i)
        check_identity(built.M_seq[0] ==
                           op_mul(ctx, p[static_cast<std::size_t>(i)],
                                  built.M_seq[static_cast<std::size_t>(i)]) +
                               op_mul(ctx, p[static_cast<std::size_t>(i - 1)],
                                      built.M_seq[static_cast<std::size_t>(i + 1)]),
                       "M_0 = P_i M_i + P_{i-1} M_{i+1}");
    check_identity(op_mul(ctx, pp[uk], r[uk - 1]) == op_mul(ctx, rp[uk - 1], p[uk]),
                   "P'_k R_k = R'_k P_k");
    check_identity(built.quad.L1 == op_mul(ctx, built.N_seq[uk], pp[uk]) +
                                        op_mul(ctx, built.N_seq[uk + 1], pp[uk - 1]),
                   "L1 = N_k P'_k + N_{k+1} P'_{k-1}");
    check_identity(dt_verify_inverse(ctx, built.quad, w), "continued inverse witness");
    return {w, std::move(p), std::move(pp), std::move(r), std::move(rp)};
}

DTQuad continued_seed_quad(const FieldContext& ctx, const Chain& ch) {
    const auto* ct = std::get_if<CommutingTail>(&ch.tail);
    if (!ct) fail(ErrorKind::UsageError, "seed quad applies to commuting-tail chains");
    LinOp cb = ch.tail_op();
    LinOp mk = ch.M.back();
    LinOp nk = op_conjugate(ctx, mk, ct->c.inverse());
    DTQuad q{cb, cb, mk, nk};
    check_identity(dt_verify(ctx, q), "commuting tail seed quad");
    return q;
}

Chain decompose_xxy(const FieldContext& ctx, const LinOp& l, const std::string& x,
                    const std::string& y) {
    MultiIndex mxxy = MultiIndex::of(x, 2) + MultiIndex::of(y);
    MultiIndex mxx = MultiIndex::of(x, 2);
    MultiIndex mxy = MultiIndex::of(x) + MultiIndex::of(y);
    MultiIndex mx = MultiIndex::of(x);
    MultiIndex my = MultiIndex::of(y);
    for (const auto& [m, c] : l.terms)
        if (!(m == mxxy || m == mxx || m == mxy || m == mx || m == my || m.is_zero()))
            fail(ErrorKind::WrongShape, "operator is not of the dxxy shape");

    FieldElement g = l.coeff(mxxy);
    if (g.is_zero()) fail(ErrorKind::ZeroLeading, "leading dxxy coefficient vanishes");
    FieldElement h = l.coeff(mxx);
    FieldElement r = l.coeff(mxy) / g;
    FieldElement s = l.coeff(my) / g;
    FieldElement p = l.coeff(mx) - h * r - g * fe_derive(ctx, r, y);
    FieldElement q = l.coeff(MultiIndex{}) - h * s - g * fe_derive(ctx, s, y);
    if (p.is_zero()) fail(ErrorKind::SingularP, "p vanishes; decomposition is singular");
    FieldElement b = p.inverse();
    FieldElement c = (r - b * q - b * fe_derive(ctx, p, x)) / p;
    FieldElement f = s - c * q - b * fe_derive(ctx, q, x);
    if (f.is_zero()) fail(ErrorKind::ZeroF, "tail f vanishes for this operator");

    LinOp a1 = g * LinOp::derivation(y) + LinOp::scalar(h);
    LinOp a2 = b * LinOp::derivation(x) + LinOp::scalar(c);
    LinOp m2 = p * LinOp::derivation(x) + LinOp::scalar(q);
    LinOp m1 = op_mul(ctx, a2, m2) + LinOp::scalar(f);

    Chain ch = make_chain(ctx, {a1, a2}, {m1, m2}, ScalarTail{f});
    check_identity(op_mul(ctx, a1, m1) + m2 == l, "dxxy decomposition reassembles the operator");
    return ch;
}

LinOp ganzha_omega(const FieldContext& ctx, const LinOp& m, const LinOp& h,
                   const std::optional<std::pair<FieldElement, LinOp>>& hint) {
    LinOp omega;
    auto ord = h.order();
    if (ord && *ord == 0) {
        FieldElement hv = h.coeff(MultiIndex{});
        omega = op_mul(ctx, -op_commutator(ctx, m, h), LinOp::scalar(hv.inverse()));
    } else if (hint) {
        const auto& [c, b] = *hint;
        if (c.is_zero()) fail(ErrorKind::DivisionByZero, "hint scalar must be nonzero");
        if (!(h == -(c * b)))
            fail(ErrorKind::InvalidWitness, "hint does not reproduce H = -cB");
        if (!op_commutator(ctx, m, b).is_zero())
            fail(ErrorKind::NonCommuting, "hint B does not commute with M");
        omega = op_conjugate(ctx, m, c.inverse()) - m; // c M c^{-1} - M
    } else {
        fail(ErrorKind::NotDifferential,
             "H is not invertible in the field and no commuting hint was given");
    }
    check_identity(-op_commutator(ctx, m, h) == op_mul(ctx, omega, h), "-[M,H] = omega H");
    return omega;
}

} // namespace darboux
