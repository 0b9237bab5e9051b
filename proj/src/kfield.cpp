#include "darboux/kfield.hpp"

#include <algorithm>

namespace darboux {

FieldElement FieldElement::from_poly(Poly p) {
    FieldElement x;
    x.num_ = std::move(p);
    x.den_ = Poly::constant(1);
    return x;
}

FieldElement FieldElement::fraction(Poly num, Poly den) {
    if (den.is_zero()) fail(ErrorKind::DivisionByZero, "zero denominator");
    FieldElement x;
    x.num_ = std::move(num);
    x.den_ = std::move(den);
    x.reduce();
    return x;
}

bool FieldElement::is_one() const {
    return num_.is_constant() && den_.is_constant() && !num_.is_zero() &&
           num_.constant_value() == den_.constant_value();
}

void FieldElement::normalize_scale() {
    Rat s = prim_scale(den_);
    if (s != 1) {
        num_ = num_ * s;
        den_ = den_ * s;
    }
}

void FieldElement::reduce() {
    if (num_.is_zero()) {
        den_ = Poly::constant(1);
        return;
    }
    if (!(den_.is_constant() && den_.constant_value() == 1)) {
        Poly g = poly_gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = *poly_divide_exact(num_, g);
            den_ = *poly_divide_exact(den_, g);
        }
    }
    normalize_scale();
}

namespace {

Poly cancel(const Poly& p, const Poly& g) {
    if (g.is_constant()) return p;
    return *poly_divide_exact(p, g);
}

} // namespace

// Sums and products keep operands reduced and only take gcds of the small
// pieces; the results are reduced by construction, so no gcd of expanded
// products is ever needed.
FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    FieldElement r;
    Poly g = poly_gcd(a.den_, b.den_);
    if (g.is_constant()) {
        r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
        if (r.num_.is_zero()) return FieldElement();
        r.den_ = a.den_ * b.den_;
    } else {
        Poly ap = cancel(a.den_, g), bp = cancel(b.den_, g);
        Poly n = a.num_ * bp + b.num_ * ap;
        if (n.is_zero()) return FieldElement();
        // any common factor of n and the joint denominator divides g
        Poly h = poly_gcd(n, g);
        r.num_ = cancel(n, h);
        r.den_ = cancel(g, h) * ap * bp;
    }
    r.normalize_scale();
    return r;
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement operator-(const FieldElement& a) {
    FieldElement r = a;
    r.num_ = -r.num_;
    return r;
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    if (a.is_zero() || b.is_zero()) return FieldElement();
    Poly g1 = poly_gcd(a.num_, b.den_);
    Poly g2 = poly_gcd(b.num_, a.den_);
    FieldElement r;
    r.num_ = cancel(a.num_, g1) * cancel(b.num_, g2);
    r.den_ = cancel(a.den_, g2) * cancel(b.den_, g1);
    r.normalize_scale();
    return r;
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

FieldElement FieldElement::inverse() const {
    if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
    FieldElement r;
    r.num_ = den_;
    r.den_ = num_;
    r.normalize_scale();
    return r;
}

namespace {

bool valid_name(const std::string& n) {
    if (n.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(n[0])) && n[0] != '_') return false;
    for (char c : n)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

} // namespace

FieldContext::FieldContext(std::vector<std::string> variables, std::vector<std::string> adjoined,
                           std::vector<std::string> generic) {
    auto claim = [this](const std::string& n) {
        if (!valid_name(n)) fail(ErrorKind::UsageError, "invalid symbol name '" + n + "'");
        if (varset_.count(n) || adjoined_.count(n) || generic_.count(n))
            fail(ErrorKind::UsageError, "duplicate symbol name '" + n + "'");
    };
    for (auto& v : variables) {
        claim(v);
        varset_.insert(v);
        vars_.push_back(std::move(v));
    }
    for (auto& a : adjoined) {
        claim(a);
        adjoined_.emplace(std::move(a), std::map<std::string, FieldElement>{});
    }
    for (auto& g : generic) {
        claim(g);
        generic_.insert(g);
        generic_list_.push_back(std::move(g));
    }
}

void FieldContext::set_adjoined_derivative(const std::string& name, const std::string& var,
                                           FieldElement value) {
    auto it = adjoined_.find(name);
    if (it == adjoined_.end()) fail(ErrorKind::UsageError, "'" + name + "' is not adjoined");
    if (!has_variable(var)) fail(ErrorKind::UnknownVariable, "unknown variable '" + var + "'");
    it->second[var] = std::move(value);
}

FieldElement FieldContext::symbol_derivative(const Symbol& s, const std::string& var) const {
    switch (s.kind) {
    case SymbolKind::Variable:
        return FieldElement::from_int(s.name == var ? 1 : 0);
    case SymbolKind::Adjoined: {
        auto it = adjoined_.find(s.name);
        if (it == adjoined_.end()) fail(ErrorKind::UnknownSymbol, "unknown adjoined '" + s.name + "'");
        auto jt = it->second.find(var);
        if (jt == it->second.end()) return FieldElement();
        return jt->second;
    }
    case SymbolKind::Jet:
        return FieldElement::from_symbol(s.jet_successor(var));
    }
    fail(ErrorKind::Internal, "bad symbol kind");
}

std::optional<Symbol> FieldContext::resolve(const std::string& name) const {
    if (has_variable(name)) return Symbol::variable(name);
    if (has_adjoined(name)) return Symbol::adjoined(name);
    if (has_generic(name)) return Symbol::jet(name, {});
    // jet spelling: <generic>_<vars...> with variable names concatenated
    for (const auto& g : generic_) {
        if (name.size() <= g.size() + 1 || name.compare(0, g.size(), g) != 0 ||
            name[g.size()] != '_')
            continue;
        std::string suffix = name.substr(g.size() + 1);
        // DP segmentation of the suffix into registered variable names
        std::size_t n = suffix.size();
        std::vector<std::ptrdiff_t> from(n + 1, -1); // previous cut position
        std::vector<const std::string*> pick(n + 1, nullptr);
        from[0] = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (from[i] < 0 && i > 0) continue;
            for (const auto& v : varset_) {
                if (suffix.compare(i, v.size(), v) != 0) continue;
                std::size_t j = i + v.size();
                if (j <= n && from[j] < 0) {
                    from[j] = static_cast<std::ptrdiff_t>(i);
                    pick[j] = &v;
                }
            }
        }
        if (from[n] < 0 && n > 0) continue;
        std::vector<std::string> derivs;
        for (std::size_t j = n; j > 0; j = static_cast<std::size_t>(from[j]))
            derivs.push_back(*pick[j]);
        if (derivs.empty()) continue;
        return Symbol::jet(g, std::move(derivs));
    }
    return std::nullopt;
}

FieldElement FieldContext::element(const std::string& name) const {
    auto s = resolve(name);
    if (!s) fail(ErrorKind::UnknownSymbol, "unknown symbol '" + name + "'");
    return FieldElement::from_symbol(*s);
}

namespace {

// d/dvar of a polynomial, chaining through symbol derivatives
FieldElement poly_derive(const FieldContext& ctx, const Poly& p, const std::string& var) {
    FieldElement out;
    for (const auto& s : p.symbols()) {
        FieldElement ds = ctx.symbol_derivative(s, var);
        if (ds.is_zero()) continue;
        out = out + FieldElement::from_poly(poly_derive_formal(p, s)) * ds;
    }
    return out;
}

} // namespace

FieldElement fe_derive(const FieldContext& ctx, const FieldElement& x, const std::string& var) {
    if (!ctx.has_variable(var)) fail(ErrorKind::UnknownVariable, "unknown variable '" + var + "'");
    FieldElement dn = poly_derive(ctx, x.num(), var);
    if (x.den().is_constant()) {
        // denominator is a constant: quotient rule collapses
        return dn / FieldElement::from_poly(x.den());
    }
    FieldElement dd = poly_derive(ctx, x.den(), var);
    FieldElement den = FieldElement::from_poly(x.den());
    FieldElement num = FieldElement::from_poly(x.num());
    return (dn * den - num * dd) / (den * den);
}

std::optional<std::vector<FieldElement>> linear_solve(std::vector<std::vector<FieldElement>> a,
                                                      std::vector<FieldElement> b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    for (const auto& row : a)
        if (row.size() != cols) fail(ErrorKind::UsageError, "ragged matrix");
    if (b.size() != rows) fail(ErrorKind::UsageError, "rhs size mismatch");

    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        FieldElement inv = a[r][c].inverse();
        for (std::size_t j = c; j < cols; ++j) a[r][j] = a[r][j] * inv;
        b[r] = b[r] * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            FieldElement f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
            b[i] = b[i] - f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (!b[i].is_zero()) return std::nullopt;

    std::vector<FieldElement> x(cols);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
    return x;
}

} // namespace darboux
