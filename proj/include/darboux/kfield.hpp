#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "darboux/error.hpp"
#include "darboux/poly.hpp"

namespace darboux {

// Element of the differential field: a reduced fraction of multivariate
// polynomials. Canonical form: fraction fully reduced (gcd of numerator and
// denominator is a unit), denominator has coprime integer coefficients with
// a positive leading coefficient, zero is 0/1. Two elements are equal iff
// their representations are identical.
class FieldElement {
public:
    FieldElement() : num_(), den_(Poly::constant(1)) {}

    static FieldElement from_int(long v) { return from_rat(Rat(v)); }
    static FieldElement from_rat(const Rat& r) { return from_poly(Poly::constant(r)); }
    static FieldElement from_poly(Poly p);
    static FieldElement from_symbol(const Symbol& s) { return from_poly(Poly::symbol(s)); }
    static FieldElement fraction(Poly num, Poly den); // throws DivisionByZero

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
    Rat rational_value() const { return num_.constant_value() / den_.constant_value(); }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    FieldElement inverse() const; // throws DivisionByZero on zero

private:
    Poly num_, den_;
    void reduce();
    void normalize_scale(); // denominator to primitive integer, positive leading
};

inline bool fe_is_zero(const FieldElement& x) { return x.is_zero(); }

// Differential field context: an ordered list of variables (each carrying a
// derivation), adjoined transcendental symbols with declared derivative
// tables, and generic function symbols whose derivatives are jet symbols
// (a -> a_x -> a_xy ...) that spring into existence on demand. Immutable
// once the adjoined tables are filled in; jet lookup is pure.
class FieldContext {
public:
    FieldContext() = default;
    FieldContext(std::vector<std::string> variables,
                 std::vector<std::string> adjoined,
                 std::vector<std::string> generic);

    // setup phase; entries not set default to derivative zero
    void set_adjoined_derivative(const std::string& name, const std::string& var,
                                 FieldElement value);

    const std::vector<std::string>& variables() const { return vars_; }
    bool has_variable(const std::string& n) const { return varset_.count(n) > 0; }
    bool has_adjoined(const std::string& n) const { return adjoined_.count(n) > 0; }
    bool has_generic(const std::string& n) const { return generic_.count(n) > 0; }
    const std::map<std::string, std::map<std::string, FieldElement>>& adjoined_tables() const {
        return adjoined_;
    }
    const std::vector<std::string>& generic_names() const { return generic_list_; }

    // derivative of a single symbol by a registered variable
    FieldElement symbol_derivative(const Symbol& s, const std::string& var) const;

    // resolve a name to a symbol: variable, adjoined, generic, or a jet
    // spelling such as a_xy (base + '_' + concatenated variable names)
    std::optional<Symbol> resolve(const std::string& name) const;

    FieldElement element(const std::string& name) const; // resolve or throw

private:
    std::vector<std::string> vars_;
    std::set<std::string> varset_;
    std::map<std::string, std::map<std::string, FieldElement>> adjoined_;
    std::set<std::string> generic_;
    std::vector<std::string> generic_list_;
};

// derivation of the field by a registered variable (quotient rule, adjoined
// tables, jet generation)
FieldElement fe_derive(const FieldContext& ctx, const FieldElement& x, const std::string& var);

// Solve A x = b over the field by Gaussian elimination; free unknowns are
// set to zero. nullopt when the system is inconsistent.
std::optional<std::vector<FieldElement>> linear_solve(std::vector<std::vector<FieldElement>> a,
                                                      std::vector<FieldElement> b);

} // namespace darboux
