#pragma once

#include <optional>
#include <utility>

#include "darboux/kfield.hpp"

namespace darboux {

// Finitely supported derivation multi-index over variable names.
struct MultiIndex {
    std::map<std::string, int> e; // exponents > 0

    static MultiIndex of(const std::string& v, int k = 1);

    bool is_zero() const { return e.empty(); }
    int order() const;
    int exponent(const std::string& v) const;

    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
    // componentwise difference, nullopt if any exponent would go negative
    friend std::optional<MultiIndex> mi_subtract(const MultiIndex& a, const MultiIndex& b);
    friend bool operator==(const MultiIndex& a, const MultiIndex& b) = default;
};

// graded lexicographic over alphabetical variable order
int mi_cmp(const MultiIndex& a, const MultiIndex& b);

struct MultiIndexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const { return mi_cmp(a, b) < 0; }
};

// all gamma with gamma <= alpha componentwise, together with the product of
// binomial coefficients C(alpha_v, gamma_v)
std::vector<std::pair<MultiIndex, Int>> mi_below(const MultiIndex& alpha);

// Linear partial differential operator in normal form: a finite sum of
// coefficient * d^alpha with field coefficients written on the left. The
// term map never holds zero coefficients; the zero operator is the empty map
// and its order is "minus infinity" (represented as nullopt).
struct LinOp {
    std::map<MultiIndex, FieldElement, MultiIndexLess> terms;

    static LinOp zero() { return {}; }
    static LinOp identity() { return scalar(FieldElement::from_int(1)); }
    static LinOp scalar(const FieldElement& f);
    static LinOp derivation(const std::string& v, int k = 1);
    static LinOp term(const FieldElement& c, const MultiIndex& a);

    bool is_zero() const { return terms.empty(); }
    std::optional<int> order() const; // nullopt for the zero operator
    FieldElement coeff(const MultiIndex& a) const;
    void add_term(const MultiIndex& a, const FieldElement& c);

    friend LinOp operator+(const LinOp& a, const LinOp& b);
    friend LinOp operator-(const LinOp& a, const LinOp& b);
    friend LinOp operator-(const LinOp& a);
    friend LinOp operator*(const FieldElement& f, const LinOp& a); // left multiplication
    friend bool operator==(const LinOp& a, const LinOp& b) { return a.terms == b.terms; }
};

// noncommutative product via the Leibniz rule d_v(f.) = f d_v + f_v
LinOp op_mul(const FieldContext& ctx, const LinOp& a, const LinOp& b);

// apply the operator to a field element
FieldElement op_apply(const FieldContext& ctx, const LinOp& a, const FieldElement& f);

// gauge conjugation g^{-1} A g; g must be nonzero
LinOp op_conjugate(const FieldContext& ctx, const LinOp& a, const FieldElement& g);

LinOp op_commutator(const FieldContext& ctx, const LinOp& a, const LinOp& b);

// split L = A d_t + L' with L' free of d_t; exact, no derivations involved
std::pair<LinOp, LinOp> op_tdivide(const FieldContext& ctx, const LinOp& l, const std::string& t);

// find A with A*L = X by linear algebra on an ansatz of order ord X - ord L;
// right division is unique when it exists. L must be nonzero.
std::optional<LinOp> op_right_divide(const FieldContext& ctx, const LinOp& x, const LinOp& l);

// monic operator of order m in d_v annihilating the m given seeds; built from
// the (m+1)x(m+1) Wronskian determinant expansion. Seeds must have a nonzero
// Wronskian.
LinOp wronskian_operator(const FieldContext& ctx, const std::vector<FieldElement>& seeds,
                         const std::string& v);

// Principal symbol: the top-order terms as a homogeneous commutative
// polynomial in formal symbols (one per variable).
struct SymbolPoly {
    int degree = 0;
    std::map<MultiIndex, FieldElement, MultiIndexLess> terms;

    friend SymbolPoly operator*(const SymbolPoly& a, const SymbolPoly& b);
    friend bool operator==(const SymbolPoly& a, const SymbolPoly& b) {
        return a.degree == b.degree && a.terms == b.terms;
    }
};

SymbolPoly op_symbol(const LinOp& a); // throws on the zero operator

// determinant of a square matrix over the field (used by wronskian_operator
// and available to tests)
FieldElement fe_det(std::vector<std::vector<FieldElement>> m);

} // namespace darboux
