#include "darboux/laplace.hpp"

namespace darboux {

LinOp schrodinger_op(const Schrodinger2D& s) {
    LinOp l;
    l.add_term(MultiIndex::of(s.x) + MultiIndex::of(s.y), FieldElement::from_int(1));
    l.add_term(MultiIndex::of(s.x), s.a);
    l.add_term(MultiIndex::of(s.y), s.b);
    l.add_term(MultiIndex{}, s.c);
    return l;
}

Schrodinger2D schrodinger_from(const LinOp& l, const std::string& x, const std::string& y) {
    Schrodinger2D s;
    s.x = x;
    s.y = y;
    MultiIndex dxy = MultiIndex::of(x) + MultiIndex::of(y);
    for (const auto& [m, c] : l.terms) {
        if (m == dxy) {
            if (!c.is_one()) fail(ErrorKind::WrongShape, "dx dy coefficient must be 1");
        } else if (m == MultiIndex::of(x)) {
            s.a = c;
        } else if (m == MultiIndex::of(y)) {
            s.b = c;
        } else if (m.is_zero()) {
            s.c = c;
        } else {
            fail(ErrorKind::WrongShape, "operator is not of the dx dy + a dx + b dy + c shape");
        }
    }
    if (l.coeff(dxy).is_zero())
        fail(ErrorKind::WrongShape, "missing dx dy term");
    return s;
}

LaplaceInvariants laplace_invariants(const FieldContext& ctx, const Schrodinger2D& s) {
    FieldElement ab = s.a * s.b;
    return {fe_derive(ctx, s.a, s.x) + ab - s.c, fe_derive(ctx, s.b, s.y) + ab - s.c};
}

namespace {

// direction-symmetric data: d is the direction variable, o the other one;
// beta is the coefficient that gets modified (the d_o coefficient of L),
// alpha the one that is kept.
struct DirData {
    std::string d, o;
    FieldElement alpha, beta;
    FieldElement inv; // the governing Laplace invariant (k for x, h for y)
};

DirData dir_data(const FieldContext& ctx, const Schrodinger2D& s, LaplaceDirection dir) {
    auto invs = laplace_invariants(ctx, s);
    if (dir == LaplaceDirection::X) return {s.x, s.y, s.a, s.b, invs.k};
    return {s.y, s.x, s.b, s.a, invs.h};
}

} // namespace

DTQuad laplace_transform(const FieldContext& ctx, const Schrodinger2D& s, LaplaceDirection dir) {
    DirData dd = dir_data(ctx, s, dir);
    if (dd.inv.is_zero())
        fail(ErrorKind::ZeroInvariant,
             dir == LaplaceDirection::X ? "invariant k vanishes" : "invariant h vanishes");
    FieldElement w = fe_derive(ctx, dd.inv, dd.d) / dd.inv;

    LinOp m = LinOp::derivation(dd.d) + LinOp::scalar(dd.beta);
    LinOp n = LinOp::derivation(dd.d) + LinOp::scalar(dd.beta - w);

    FieldElement c1 = dd.alpha * dd.beta - dd.alpha * w - dd.inv + fe_derive(ctx, dd.alpha, dd.d);
    Schrodinger2D s1;
    s1.x = s.x;
    s1.y = s.y;
    if (dir == LaplaceDirection::X) {
        s1.a = dd.alpha;
        s1.b = dd.beta - w;
    } else {
        s1.a = dd.beta - w;
        s1.b = dd.alpha;
    }
    s1.c = c1;

    DTQuad q{schrodinger_op(s), schrodinger_op(s1), m, n};
    check_identity(dt_verify(ctx, q), "Laplace transformation quad");
    return q;
}

InverseWitness laplace_inverse(const FieldContext& ctx, const DTQuad& q, LaplaceDirection dir,
                               const std::string& x, const std::string& y) {
    Schrodinger2D s = schrodinger_from(q.L, x, y);
    if (!(laplace_transform(ctx, s, dir) == q))
        fail(ErrorKind::InvalidWitness, "quad was not produced by this Laplace transformation");
    DirData dd = dir_data(ctx, s, dir);
    FieldElement ivi = dd.inv.inverse();
    FieldElement wo = fe_derive(ctx, dd.inv, dd.o) / dd.inv;

    for (int sign : {+1, -1}) {
        FieldElement sg = FieldElement::from_int(sign) * ivi;
        LinOp mp = sg * (LinOp::derivation(dd.o) + LinOp::scalar(dd.alpha));
        // conjugate-direction counterpart: d_o + alpha - inv_o/inv
        LinOp np = sg * (LinOp::derivation(dd.o) + LinOp::scalar(dd.alpha - wo));
        // A makes M'M = 1 + AL; B must satisfy M M' = 1 + B L1
        LinOp a = LinOp::scalar(sg);
        auto b = op_right_divide(ctx, op_mul(ctx, q.M, mp) - LinOp::identity(), q.L1);
        if (!b) continue;
        InverseWitness w{mp, np, a, *b};
        if (dt_verify_inverse(ctx, q, w)) return w;
    }
    fail(ErrorKind::NoVerifiedCandidate, "no sign candidate passed the inverse identity battery");
}

LaplaceComposition laplace_compose_check(const FieldContext& ctx, const Schrodinger2D& s,
                                         LaplaceDirection first) {
    LaplaceDirection second =
        first == LaplaceDirection::X ? LaplaceDirection::Y : LaplaceDirection::X;
    DTQuad q1 = laplace_transform(ctx, s, first);
    Schrodinger2D s1 = schrodinger_from(q1.L1, s.x, s.y);
    DTQuad q2 = laplace_transform(ctx, s1, second);
    DTQuad comp = dt_compose(ctx, q1, q2);

    FieldElement inv = dir_data(ctx, s, first).inv; // k for x-first, h for y-first
    check_identity(comp.M == LinOp::scalar(inv) + q1.L, "composed Laplace M equals inv + L");
    FieldElement gauge = inv.inverse();
    check_identity(comp.L1 == op_conjugate(ctx, q1.L, gauge),
                   "composed Laplace target is the gauge conjugate");
    return {comp, gauge};
}

} // namespace darboux
