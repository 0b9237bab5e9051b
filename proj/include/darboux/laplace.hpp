#pragma once

#include "darboux/dtcore.hpp"

namespace darboux {

// Second-order hyperbolic operator dx dy + a dx + b dy + c in two named
// variables.
struct Schrodinger2D {
    std::string x = "x", y = "y";
    FieldElement a, b, c;
};

struct LaplaceInvariants {
    FieldElement h; // a_x + ab - c
    FieldElement k; // b_y + ab - c
};

enum class LaplaceDirection { X, Y };

LinOp schrodinger_op(const Schrodinger2D& s);

// read the shape back off an operator; the dx dy coefficient must be exactly 1
Schrodinger2D schrodinger_from(const LinOp& l, const std::string& x = "x",
                               const std::string& y = "y");

LaplaceInvariants laplace_invariants(const FieldContext& ctx, const Schrodinger2D& s);

// Classical Laplace transformation. x-direction (requires k != 0):
//   M = dx + b,  N = dx + b - k_x/k,
//   L1 = dx dy + a dx + (b - k_x/k) dy + (ab - a k_x/k - k + a_x)
// y-direction is the x<->y, a<->b, h<->k mirror.
DTQuad laplace_transform(const FieldContext& ctx, const Schrodinger2D& s, LaplaceDirection dir);

// Inverse witness for a quad produced by laplace_transform. Both sign
// candidates +/- inv^{-1}(d_other + coeff) are constructed and checked
// against the full identity battery; the verified one is returned.
InverseWitness laplace_inverse(const FieldContext& ctx, const DTQuad& q, LaplaceDirection dir,
                               const std::string& x = "x", const std::string& y = "y");

struct LaplaceComposition {
    DTQuad composite;    // the two transformations composed
    FieldElement gauge;  // 1/k (x then y) or 1/h (y then x)
};

// Compose the transformation with its mirror and certify the round trip:
// for x then y, Mhat = composite.M equals k + L and the final operator is
// the gauge conjugate L^{1/k}.
LaplaceComposition laplace_compose_check(const FieldContext& ctx, const Schrodinger2D& s,
                                         LaplaceDirection first = LaplaceDirection::X);

} // namespace darboux
