#include "darboux/dtcore.hpp"

namespace darboux {

namespace {

bool symbols_match(const LinOp& a, const LinOp& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return op_symbol(a) == op_symbol(b);
}

} // namespace

bool dt_verify(const FieldContext& ctx, const DTQuad& q) {
    if (!symbols_match(q.L, q.L1)) return false;
    return (op_mul(ctx, q.N, q.L) - op_mul(ctx, q.L1, q.M)).is_zero();
}

DTQuad dt_compose(const FieldContext& ctx, const DTQuad& q1, const DTQuad& q2) {
    if (!(q1.L1 == q2.L))
        fail(ErrorKind::ChainMismatch, "composition endpoints do not match");
    return {q1.L, q2.L1, op_mul(ctx, q2.M, q1.M), op_mul(ctx, q2.N, q1.N)};
}

std::optional<LinOp> dt_equivalent(const FieldContext& ctx, const DTQuad& q, const DTQuad& q2) {
    if (!(q.L == q2.L) || !(q.L1 == q2.L1))
        fail(ErrorKind::ChainMismatch, "equivalence needs matching endpoints");
    LinOp diff = q2.M - q.M;
    std::optional<LinOp> a;
    if (diff.is_zero()) {
        a = LinOp::zero();
    } else {
        if (q.L.is_zero()) return std::nullopt;
        a = op_right_divide(ctx, diff, q.L);
        if (!a) return std::nullopt;
    }
    LinOp n2 = q.N + op_mul(ctx, q.L1, *a);
    if (!(n2 == q2.N)) return std::nullopt;
    return a;
}

DTQuad dt_shift(const FieldContext& ctx, const DTQuad& q, const LinOp& c) {
    return {q.L + op_mul(ctx, c, q.M), q.L1 + op_mul(ctx, q.N, c), q.M, q.N};
}

DTQuad dt_dual(const DTQuad& q) { return {q.M, q.N, q.L, q.L1}; }

bool dt_verify_inverse(const FieldContext& ctx, const DTQuad& q, const InverseWitness& w) {
    const LinOp one = LinOp::identity();
    if (!(op_mul(ctx, w.Mp, q.M) == one + op_mul(ctx, w.A, q.L))) return false;
    if (!(op_mul(ctx, w.Np, q.N) == one + op_mul(ctx, q.L, w.A))) return false;
    if (!(op_mul(ctx, q.M, w.Mp) == one + op_mul(ctx, w.B, q.L1))) return false;
    if (!(op_mul(ctx, q.N, w.Np) == one + op_mul(ctx, q.L1, w.B))) return false;
    if (!(op_mul(ctx, w.B, q.N) == op_mul(ctx, q.M, w.A))) return false;
    // the inverse pair must itself be a transformation from L1 back to L
    return dt_verify(ctx, DTQuad{q.L1, q.L, w.Mp, w.Np});
}

InverseWitness dt_shift_inverse(const FieldContext& ctx, const DTQuad& q, const InverseWitness& w,
                                const LinOp& c) {
    if (!dt_verify_inverse(ctx, q, w))
        fail(ErrorKind::InvalidWitness, "witness does not verify against the quad");
    InverseWitness out{w.Mp + op_mul(ctx, w.A, c), w.Np + op_mul(ctx, c, w.B), w.A, w.B};
    check_identity(dt_verify_inverse(ctx, dt_shift(ctx, q, c), out), "shifted inverse witness");
    return out;
}

InverseWitness dt_dual_inverse(const FieldContext& ctx, const DTQuad& q, const InverseWitness& w) {
    if (!dt_verify_inverse(ctx, q, w))
        fail(ErrorKind::InvalidWitness, "witness does not verify against the quad");
    InverseWitness out{-w.A, -w.B, -w.Mp, -w.Np};
    check_identity(dt_verify_inverse(ctx, dt_dual(q), out), "dual inverse witness");
    return out;
}

FieldElement dt_kernel_map(const FieldContext& ctx, const DTQuad& q, const FieldElement& phi) {
    if (!op_apply(ctx, q.L, phi).is_zero())
        fail(ErrorKind::NotInKernel, "phi is not in the kernel of L");
    FieldElement out = op_apply(ctx, q.M, phi);
    check_identity(op_apply(ctx, q.L1, out).is_zero(), "kernel map lands in ker L1");
    return out;
}

LinOp dt_compose_equivalence_witness(const FieldContext& ctx, const LinOp& a, const LinOp& b,
                                     const DTQuad& q1, const DTQuad& q2) {
    if (!(q1.L1 == q2.L))
        fail(ErrorKind::ChainMismatch, "composition endpoints do not match");
    if (!dt_verify(ctx, q1) || !dt_verify(ctx, q2))
        fail(ErrorKind::InvalidWitness, "quads must verify");
    LinOp c = op_mul(ctx, b, q1.N) + op_mul(ctx, op_mul(ctx, b, q2.L), a) + op_mul(ctx, q2.M, a);

    // representatives M + A L and M1 + B L1 compose to M1 M + C L
    LinOp m_rep = q1.M + op_mul(ctx, a, q1.L);
    LinOp m1_rep = q2.M + op_mul(ctx, b, q2.L);
    LinOp lhs_m = op_mul(ctx, m1_rep, m_rep);
    check_identity(lhs_m == op_mul(ctx, q2.M, q1.M) + op_mul(ctx, c, q1.L),
                   "composed M representative");
    LinOp n_rep = q1.N + op_mul(ctx, q1.L1, a);
    LinOp n1_rep = q2.N + op_mul(ctx, q2.L1, b);
    LinOp lhs_n = op_mul(ctx, n1_rep, n_rep);
    check_identity(lhs_n == op_mul(ctx, q2.N, q1.N) + op_mul(ctx, q2.L1, c),
                   "composed N representative");
    return c;
}

} // namespace darboux
