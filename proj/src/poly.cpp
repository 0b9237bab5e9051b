#include "darboux/poly.hpp"

#include "darboux/error.hpp"

namespace darboux {

Monomial Monomial::of(const Symbol& s, int e) {
    Monomial m;
    if (e != 0) m.factors.emplace_back(s, e);
    return m;
}

int Monomial::degree() const {
    int d = 0;
    for (const auto& [s, e] : factors) d += e;
    return d;
}

int Monomial::exponent(const Symbol& s) const {
    for (const auto& [t, e] : factors)
        if (t == s) return e;
    return 0;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        if (j == b.factors.size() || (i < a.factors.size() && a.factors[i].first < b.factors[j].first)) {
            r.factors.push_back(a.factors[i++]);
        } else if (i == a.factors.size() || b.factors[j].first < a.factors[i].first) {
            r.factors.push_back(b.factors[j++]);
        } else {
            int e = a.factors[i].second + b.factors[j].second;
            if (e != 0) r.factors.emplace_back(a.factors[i].first, e);
            ++i; ++j;
        }
    }
    return r;
}

std::optional<Monomial> mono_divide(const Monomial& a, const Monomial& b) {
    Monomial r;
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        if (j == b.factors.size()) {
            r.factors.push_back(a.factors[i++]);
        } else if (i == a.factors.size()) {
            return std::nullopt; // b has a symbol a lacks
        } else if (a.factors[i].first < b.factors[j].first) {
            r.factors.push_back(a.factors[i++]);
        } else if (b.factors[j].first < a.factors[i].first) {
            return std::nullopt;
        } else {
            int e = a.factors[i].second - b.factors[j].second;
            if (e < 0) return std::nullopt;
            if (e > 0) r.factors.emplace_back(a.factors[i].first, e);
            ++i; ++j;
        }
    }
    return r;
}

int mono_cmp(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
    // lexicographic: walk symbols in global order; larger exponent on the
    // earliest differing symbol makes the monomial larger
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() && j < b.factors.size()) {
        const auto& [sa, ea] = a.factors[i];
        const auto& [sb, eb] = b.factors[j];
        if (sa < sb) return 1;  // a has a positive power on an earlier symbol
        if (sb < sa) return -1;
        if (ea != eb) return ea < eb ? -1 : 1;
        ++i; ++j;
    }
    if (i < a.factors.size()) return 1;
    if (j < b.factors.size()) return -1;
    return 0;
}

Poly Poly::constant(const Rat& c) {
    Poly p;
    if (c != 0) p.terms.emplace(Monomial::one(), c);
    return p;
}

Poly Poly::symbol(const Symbol& s, int e) {
    Poly p;
    p.terms.emplace(Monomial::of(s, e), Rat(1));
    return p;
}

Poly Poly::monomial(const Monomial& m, const Rat& c) {
    Poly p;
    if (c != 0) p.terms.emplace(m, c);
    return p;
}

bool Poly::is_constant() const {
    return terms.empty() || (terms.size() == 1 && terms.begin()->first.is_one());
}

Rat Poly::constant_value() const {
    if (terms.empty()) return Rat(0);
    return terms.begin()->second;
}

int Poly::degree() const {
    if (terms.empty()) return -1;
    return terms.rbegin()->first.degree();
}

const Monomial& Poly::leading_monomial() const {
    if (terms.empty()) fail(ErrorKind::Internal, "leading term of zero polynomial");
    return terms.rbegin()->first;
}

const Rat& Poly::leading_coeff() const {
    if (terms.empty()) fail(ErrorKind::Internal, "leading term of zero polynomial");
    return terms.rbegin()->second;
}

std::set<Symbol> Poly::symbols() const {
    std::set<Symbol> out;
    for (const auto& [m, c] : terms)
        for (const auto& [s, e] : m.factors) out.insert(s);
    return out;
}

void Poly::add_term(const Monomial& m, const Rat& c) {
    if (c == 0) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
        terms.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [m, c] : b.terms) r.add_term(m, c);
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [m, c] : b.terms) r.add_term(m, -c);
    return r;
}

Poly operator-(const Poly& a) {
    Poly r;
    for (const auto& [m, c] : a.terms) r.terms.emplace(m, -c);
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) r.add_term(ma * mb, ca * cb);
    return r;
}

Poly operator*(const Poly& a, const Rat& c) {
    Poly r;
    if (c == 0) return r;
    for (const auto& [m, k] : a.terms) r.terms.emplace(m, k * c);
    return r;
}

Poly poly_derive_formal(const Poly& p, const Symbol& s) {
    Poly r;
    for (const auto& [m, c] : p.terms) {
        int e = m.exponent(s);
        if (e == 0) continue;
        auto q = mono_divide(m, Monomial::of(s, 1));
        r.add_term(*q, c * e);
    }
    return r;
}

Rat prim_scale(const Poly& p) {
    if (p.is_zero()) return Rat(1);
    Int num_gcd = 0, den_lcm = 1;
    for (const auto& [m, c] : p.terms) {
        num_gcd = int_gcd(num_gcd, rat_num(c));
        den_lcm = int_lcm(den_lcm, rat_den(c));
    }
    Rat scale(den_lcm, num_gcd); // cpp_rational normalizes sign into numerator
    if (p.leading_coeff() * scale < 0) scale = -scale;
    return scale;
}

namespace {

int deg_in(const Poly& p, const Symbol& s) {
    int d = 0;
    for (const auto& [m, c] : p.terms) d = std::max(d, m.exponent(s));
    return d;
}

// coefficient of s^k in p, as a polynomial in the remaining symbols
Poly coeff_in(const Poly& p, const Symbol& s, int k) {
    Poly r;
    for (const auto& [m, c] : p.terms) {
        if (m.exponent(s) != k) continue;
        auto q = mono_divide(m, Monomial::of(s, k));
        r.add_term(*q, c);
    }
    return r;
}

// gcd of the s-coefficients
Poly content_in(const Poly& p, const Symbol& s) {
    Poly g;
    for (int k = 0; k <= deg_in(p, s); ++k) {
        Poly c = coeff_in(p, s, k);
        if (c.is_zero()) continue;
        g = poly_gcd(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

// pseudo-remainder of p by q, both viewed as univariate in s
Poly prem(const Poly& p, const Poly& q, const Symbol& s) {
    int dq = deg_in(q, s);
    Poly lq = coeff_in(q, s, dq);
    Poly r = p;
    while (!r.is_zero()) {
        int dr = deg_in(r, s);
        if (dr < dq) break;
        Poly lr = coeff_in(r, s, dr);
        r = r * lq - lr * q * Poly::symbol(s, dr - dq);
    }
    return r;
}

Poly exact_div_or_die(const Poly& a, const Poly& b, const char* where) {
    auto q = poly_divide_exact(a, b);
    if (!q) fail(ErrorKind::Internal, std::string("exact division failed in ") + where);
    return *q;
}

// ---- heuristic gcd: evaluate at a large integer, take the integer gcd,
// ---- reconstruct a candidate from its base-xi digits, verify by division

Int int_content(const Poly& p) {
    Int g = 0;
    for (const auto& [m, c] : p.terms) g = int_gcd(g, rat_num(c));
    return g;
}

Int max_abs_coeff(const Poly& p) {
    Int r = 0;
    for (const auto& [m, c] : p.terms) {
        Int a = abs(rat_num(c));
        if (a > r) r = a;
    }
    return r;
}

Poly poly_eval_int(const Poly& p, const Symbol& s, const Int& xi) {
    std::map<int, Int> powers;
    Poly r;
    for (const auto& [m, c] : p.terms) {
        int e = m.exponent(s);
        if (e == 0) {
            r.add_term(m, c);
            continue;
        }
        auto it = powers.find(e);
        if (it == powers.end())
            it = powers.emplace(e, boost::multiprecision::pow(xi, static_cast<unsigned>(e))).first;
        r.add_term(*mono_divide(m, Monomial::of(s, e)), c * Rat(it->second));
    }
    return r;
}

Int smod(const Int& x, const Int& xi) {
    Int r = x % xi;
    if (r < 0) r += xi;
    if (2 * r > xi) r -= xi;
    return r;
}

// digits of gamma in base xi, collected as the coefficients of powers of s
Poly interp_xadic(Poly gamma, const Symbol& s, const Int& xi) {
    Poly out;
    int i = 0;
    while (!gamma.is_zero()) {
        Poly digit;
        for (const auto& [m, c] : gamma.terms) {
            Int v = smod(rat_num(c), xi);
            if (v != 0) digit.add_term(m, Rat(v));
        }
        if (!digit.is_zero()) out = out + digit * Poly::symbol(s, i);
        gamma = gamma - digit;
        Poly next;
        for (const auto& [m, c] : gamma.terms) next.add_term(m, Rat(rat_num(c) / xi));
        gamma = std::move(next);
        ++i;
    }
    return out;
}

// integer-coefficient nonzero inputs; the result carries the integer content
// of the gcd, because a polynomial factor turns into pure content once a
// variable it involves is evaluated, and the caller reconstructs it from that
// constant. nullopt means "fall back to the pseudo-remainder sequence"
std::optional<Poly> heu_gcd(const Poly& f, const Poly& g, int& budget) {
    if (--budget < 0) return std::nullopt;

    auto sf = f.symbols(), sg = g.symbols();
    std::vector<Symbol> vars;
    std::set_union(sf.begin(), sf.end(), sg.begin(), sg.end(), std::back_inserter(vars));
    if (vars.empty())
        return Poly::constant(
            Rat(int_gcd(rat_num(f.constant_value()), rat_num(g.constant_value()))));
    if (f.is_constant() || g.is_constant())
        return Poly::constant(Rat(int_gcd(int_content(f), int_content(g))));

    // split off integer contents: the primitive gcd is computed heuristically
    // and the content gcd is restored on the result
    Int cf = int_content(f), cg = int_content(g);
    Rat cc(int_gcd(cf, cg));
    Poly pf = f * Rat(Int(1), cf);
    Poly pg = g * Rat(Int(1), cg);

    // evaluate the variable with the smallest maximal degree to slow the
    // growth of the evaluation point
    const Symbol* pick = &vars.front();
    int pick_deg = 1 << 30;
    for (const auto& s : vars) {
        int d = std::max(deg_in(pf, s), deg_in(pg, s));
        if (d < pick_deg) {
            pick_deg = d;
            pick = &s;
        }
    }
    const Symbol s = *pick;

    Int xi = 2 * std::min(max_abs_coeff(pf), max_abs_coeff(pg)) + 29;
    for (int t = 0; t < 6; ++t) {
        if (boost::multiprecision::msb(xi) > 20000) return std::nullopt;
        Poly fe = poly_eval_int(pf, s, xi);
        Poly ge = poly_eval_int(pg, s, xi);
        if (!fe.is_zero() && !ge.is_zero()) {
            auto h = heu_gcd(fe, ge, budget);
            if (!h) return std::nullopt;
            Poly cand = interp_xadic(*h, s, xi);
            if (!cand.is_zero()) {
                // the primitive gcd of content-free inputs is content-free
                cand = make_primitive(cand);
                if (poly_divide_exact(pf, cand) && poly_divide_exact(pg, cand))
                    return cand * cc;
            }
        }
        xi = xi * 73794 / 27011;
    }
    return std::nullopt;
}

// both arguments primitive with positive leading coefficient
Poly gcd_primitive(const Poly& a, const Poly& b) {
    if (a.is_constant() || b.is_constant()) return Poly::constant(1);

    auto sa = a.symbols(), sb = b.symbols();
    std::vector<Symbol> common;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
    if (common.empty()) return Poly::constant(1);
    const Symbol& s = common.back();

    Poly ca = content_in(a, s), cb = content_in(b, s);
    Poly pa = exact_div_or_die(a, ca, "content removal");
    Poly pb = exact_div_or_die(b, cb, "content removal");
    Poly cg = poly_gcd(ca, cb);

    Poly p = pa, q = pb;
    if (deg_in(p, s) < deg_in(q, s)) std::swap(p, q);
    Poly g;
    while (true) {
        Poly r = prem(p, q, s);
        if (r.is_zero()) { g = q; break; }
        if (deg_in(r, s) == 0) { g = Poly::constant(1); break; }
        r = make_primitive(exact_div_or_die(r, content_in(r, s), "pp of remainder"));
        p = std::move(q);
        q = std::move(r);
    }
    return make_primitive(cg * g);
}

} // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return make_primitive(b);
    if (b.is_zero()) return make_primitive(a);
    Poly pa = make_primitive(a), pb = make_primitive(b);
    if (pa == pb) return pa;
    if (pa.is_constant() || pb.is_constant()) return Poly::constant(1);

    // single-monomial shortcut: gcd is the largest common monomial divisor
    auto mono_gcd = [](const Monomial& m, const Poly& p) {
        Monomial g = m;
        for (const auto& [t, c] : p.terms) {
            Monomial next;
            for (const auto& [s, e] : g.factors) {
                int k = std::min(e, t.exponent(s));
                if (k > 0) next.factors.emplace_back(s, k);
            }
            g = std::move(next);
            if (g.is_one()) break;
        }
        return Poly::monomial(g, Rat(1));
    };
    if (pa.terms.size() == 1) return mono_gcd(pa.leading_monomial(), pb);
    if (pb.terms.size() == 1) return mono_gcd(pb.leading_monomial(), pa);

    auto engine = [](const Poly& f, const Poly& g) {
        int budget = 4000;
        if (auto h = heu_gcd(f, g, budget)) return make_primitive(*h);
        return gcd_primitive(f, g);
    };

    Poly gg = engine(pa, pb);
    if (gg.is_constant()) return Poly::constant(1);
    // a verified candidate divides the gcd; grow it until the cofactors are
    // coprime so the result is the full gcd
    while (true) {
        Poly fa = exact_div_or_die(pa, gg, "gcd cofactor");
        Poly fb = exact_div_or_die(pb, gg, "gcd cofactor");
        if (fa.is_constant() || fb.is_constant()) break;
        Poly e = engine(fa, fb);
        if (e.is_constant()) break;
        gg = gg * e;
    }
    return make_primitive(gg);
}

std::optional<Poly> poly_divide_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) return std::nullopt;
    Poly rem = a, quot;
    while (!rem.is_zero()) {
        auto m = mono_divide(rem.leading_monomial(), b.leading_monomial());
        if (!m) return std::nullopt;
        Rat c = rem.leading_coeff() / b.leading_coeff();
        Poly t = Poly::monomial(*m, c);
        quot = quot + t;
        rem = rem - t * b;
    }
    return quot;
}

} // namespace darboux
