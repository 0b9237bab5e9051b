#pragma once

#include "darboux/dtcore.hpp"

namespace darboux {

// Decomposition L = A d_t + c B (or its gauge conjugate) produced by the
// first-order criteria.
struct CriterionDecomposition {
    LinOp A;
    FieldElement c;
    LinOp B;
};

struct CriterionResult {
    bool admits = false;
    std::optional<CriterionDecomposition> decomposition;
    std::optional<DTQuad> quad; // present when admits
    std::string diagnostic;    // names the offending coefficient on failure
};

// Does L admit a transformation with M = d_t and first-order N? Splits
// L = A d_t + L', normalizes L' by its reference coefficient (the leading
// one in monomial order) and requires the rest to be t-free.
CriterionResult tfree_criterion(const FieldContext& ctx, const LinOp& l, const std::string& t);

// Same question for M = d_t - psi_t/psi with psi a nonzero kernel element
// of L: conjugate by psi, run the t-free test, conjugate back.
CriterionResult wronskian_criterion(const FieldContext& ctx, const LinOp& l,
                                    const FieldElement& psi, const std::string& t);

// L = C M + c B with [M, B] = 0, relative to M = d_t (or d_t - v_t/v when
// the gauge primitive v is given). nullopt when no such decomposition exists.
struct QuasiFactorization {
    LinOp C;
    FieldElement c;
    LinOp B;
    LinOp M;
};

std::optional<QuasiFactorization> quasi_factorize(const FieldContext& ctx, const LinOp& l,
                                                  const std::string& t,
                                                  const std::optional<FieldElement>& v = std::nullopt);

// Trichotomy for L = C M + c B with first-order M and [M, B] = 0.
enum class FirstOrderTag {
    FactorizationWronskian, // cB = 0
    TypeI,                  // cB a nonzero field element
    WronskianType,          // cB of positive order
};

struct FirstOrderClass {
    FirstOrderTag tag;
    LinOp C;
    FieldElement c;
    LinOp B;
    DTQuad quad;
};

FirstOrderClass classify_first_order(const FieldContext& ctx, const LinOp& c_op, const LinOp& m,
                                     const FieldElement& c, const LinOp& b);

// true iff L determines N uniquely for this M, i.e. nothing right-divides:
// there is no X with L = X M
bool unique_determination(const FieldContext& ctx, const LinOp& l, const LinOp& m);

} // namespace darboux
