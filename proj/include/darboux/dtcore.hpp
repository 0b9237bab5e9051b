#pragma once

#include "darboux/opring.hpp"

namespace darboux {

// A Darboux transformation quad: the pair (M, N) intertwines L and L1 via
// N L = L1 M, with matching principal symbols of L and L1.
struct DTQuad {
    LinOp L, L1, M, N;

    friend bool operator==(const DTQuad& a, const DTQuad& b) = default;
};

// The inverse data of an invertible transformation:
//   M' M = 1 + A L      N' N = 1 + L A
//   M M' = 1 + B L1     N N' = 1 + L1 B
// together with B N = M A, and (M', N') : L1 -> L a valid transformation.
struct InverseWitness {
    LinOp Mp, Np, A, B;

    friend bool operator==(const InverseWitness& a, const InverseWitness& b) = default;
};

// N L - L1 M == 0 and sigma(L) == sigma(L1) (two zero operators have equal
// symbols by convention; zero against nonzero does not)
bool dt_verify(const FieldContext& ctx, const DTQuad& q);

// q2 after q1; requires q1.L1 == q2.L
DTQuad dt_compose(const FieldContext& ctx, const DTQuad& q1, const DTQuad& q2);

// witness A with q2.M = q.M + A q.L and q2.N = q.N + q.L1 A, if the two
// quads (sharing L and L1) represent the same transformation
std::optional<LinOp> dt_equivalent(const FieldContext& ctx, const DTQuad& q, const DTQuad& q2);

// same morphism, shifted endpoints: (L + C M, L1 + N C, M, N)
DTQuad dt_shift(const FieldContext& ctx, const DTQuad& q, const LinOp& c);

// swap the roles of objects and morphisms: (M, N, L, L1)
DTQuad dt_dual(const DTQuad& q);

bool dt_verify_inverse(const FieldContext& ctx, const DTQuad& q, const InverseWitness& w);

// transport a verified witness along dt_shift(q, c): (M'+AC, N'+CB, A, B)
InverseWitness dt_shift_inverse(const FieldContext& ctx, const DTQuad& q, const InverseWitness& w,
                                const LinOp& c);

// transport a verified witness to the dual quad: (-A, -B, -M', -N')
InverseWitness dt_dual_inverse(const FieldContext& ctx, const DTQuad& q, const InverseWitness& w);

// image of a kernel element of L under M (lands in the kernel of L1)
FieldElement dt_kernel_map(const FieldContext& ctx, const DTQuad& q, const FieldElement& phi);

// C with (M1 + B L1)(M + A L) = M1 M + C L (and the N-side analogue);
// C = B N + B L1 A + M1 A. Both quads must verify and compose.
LinOp dt_compose_equivalence_witness(const FieldContext& ctx, const LinOp& a, const LinOp& b,
                                     const DTQuad& q1, const DTQuad& q2);

} // namespace darboux
