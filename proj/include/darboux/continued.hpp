#pragma once

#include <variant>

#include "darboux/dtcore.hpp"

namespace darboux {

// Tail of a chain: either a nonzero field element f, or a commuting pair
// (c, B) standing for the operator cB with [M_k, B] = 0 and ord B >= 1.
struct ScalarTail {
    FieldElement f;
};
struct CommutingTail {
    FieldElement c;
    LinOp B;
};

// Continued decomposition M_{i-1} = A_i M_i + M_{i+1} with M_{k+1} the tail.
// A and M hold A_1..A_k and M_1..M_k; the interior recursion relations are
// part of validity and are checked eagerly.
struct Chain {
    std::vector<LinOp> A;
    std::vector<LinOp> M;
    std::variant<ScalarTail, CommutingTail> tail;

    int k() const { return static_cast<int>(A.size()); }
    LinOp tail_op() const;
};

Chain make_chain(const FieldContext& ctx, std::vector<LinOp> a, std::vector<LinOp> m,
                 std::variant<ScalarTail, CommutingTail> tail);

// One step: L = C M + f gives the transformation (M, f M f^{-1}) : L -> L1
// with L1 = f M f^{-1} C + f.
DTQuad type1_build(const FieldContext& ctx, const LinOp& c, const LinOp& m, const FieldElement& f);

struct ContinuedBuild {
    DTQuad quad;
    std::vector<LinOp> M_seq; // M_0 .. M_{k+1}
    std::vector<LinOp> N_seq; // N_0 .. N_{k+1}
};

// Build the transformation (M_1, N_1) : M_0 -> N_0 generated by the chain.
ContinuedBuild continued_build(const FieldContext& ctx, const Chain& ch);

struct ContinuedInverse {
    InverseWitness w;
    std::vector<LinOp> P, Pp; // P_0..P_k and P'_0..P'_k
    std::vector<LinOp> R, Rp; // R_1..R_k and R'_1..R'_k (element 0 is index 1)
};

// Closed-form inverse witness for a scalar-tail chain:
//   M' = (-1)^k f^{-1} P'_k,  N' = (-1)^k P_k f^{-1},
//   A  = (-1)^k f^{-1} R'_k,  B  = (-1)^k R_k f^{-1}.
ContinuedInverse continued_inverse(const FieldContext& ctx, const Chain& ch);

// The seed transformation (M_k, c M_k c^{-1}) : cB -> cB of a commuting-tail
// chain; no inverse is constructed for these, but a user-supplied witness
// can be checked against this quad with dt_verify_inverse.
DTQuad continued_seed_quad(const FieldContext& ctx, const Chain& ch);

// Closed-form k = 2 chain for operators of the shape
//   a001 dxxy + a00 dxx + a01 dxy + a0 dx + a1 dy + a.
Chain decompose_xxy(const FieldContext& ctx, const LinOp& l, const std::string& x = "x",
                    const std::string& y = "y");

// The first-order operator w with -[M, H] = w H. Direct when H is an
// invertible field element; with a hint (c, B) such that H = -cB and
// [M, B] = 0, computed as c M c^{-1} - M. The defining identity is checked.
LinOp ganzha_omega(const FieldContext& ctx, const LinOp& m, const LinOp& h,
                   const std::optional<std::pair<FieldElement, LinOp>>& hint = std::nullopt);

} // namespace darboux
