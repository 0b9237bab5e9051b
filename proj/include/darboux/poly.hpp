#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "darboux/rational.hpp"
#include "darboux/symbol.hpp"

namespace darboux {

// Product of symbol powers; factors sorted by symbol, exponents > 0.
struct Monomial {
    std::vector<std::pair<Symbol, int>> factors;

    static Monomial one() { return {}; }
    static Monomial of(const Symbol& s, int e = 1);

    bool is_one() const { return factors.empty(); }
    int degree() const;
    int exponent(const Symbol& s) const;
    bool contains(const Symbol& s) const { return exponent(s) > 0; }

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    // a/b, provided b divides a componentwise
    friend std::optional<Monomial> mono_divide(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) = default;
};

// graded lexicographic: total degree first, then the earlier symbol in the
// global order with the larger exponent wins
int mono_cmp(const Monomial& a, const Monomial& b);

struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return mono_cmp(a, b) < 0; }
};

// Multivariate polynomial with rational coefficients. The map never holds
// zero coefficients; iteration goes from the smallest monomial up, so
// rbegin() is the leading term.
struct Poly {
    std::map<Monomial, Rat, MonoLess> terms;

    static Poly zero() { return {}; }
    static Poly constant(const Rat& c);
    static Poly symbol(const Symbol& s, int e = 1);
    static Poly monomial(const Monomial& m, const Rat& c);

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const; // zero or degree 0
    Rat constant_value() const; // requires is_constant()
    int degree() const; // -1 for zero
    const Monomial& leading_monomial() const;
    const Rat& leading_coeff() const;

    std::set<Symbol> symbols() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Rat& c);
    friend bool operator==(const Poly& a, const Poly& b) { return a.terms == b.terms; }

    void add_term(const Monomial& m, const Rat& c); // accumulate, dropping zeros
};

// formal partial derivative with respect to one symbol
Poly poly_derive_formal(const Poly& p, const Symbol& s);

// rational r such that p*r has coprime integer coefficients and a positive
// leading coefficient; prim_scale(0) = 1
Rat prim_scale(const Poly& p);
inline Poly make_primitive(const Poly& p) { return p * prim_scale(p); }

// gcd up to units, returned primitive with positive leading coefficient;
// poly_gcd(0,0) = 0
Poly poly_gcd(const Poly& a, const Poly& b);

// exact quotient a/b, or nullopt when b does not divide a
std::optional<Poly> poly_divide_exact(const Poly& a, const Poly& b);

} // namespace darboux
