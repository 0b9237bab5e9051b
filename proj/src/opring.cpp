#include "darboux/opring.hpp"

namespace darboux {

MultiIndex MultiIndex::of(const std::string& v, int k) {
    MultiIndex m;
    if (k != 0) m.e.emplace(v, k);
    return m;
}

int MultiIndex::order() const {
    int d = 0;
    for (const auto& [v, k] : e) d += k;
    return d;
}

int MultiIndex::exponent(const std::string& v) const {
    auto it = e.find(v);
    return it == e.end() ? 0 : it->second;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r = a;
    for (const auto& [v, k] : b.e) {
        auto [it, fresh] = r.e.emplace(v, k);
        if (!fresh) it->second += k;
    }
    return r;
}

std::optional<MultiIndex> mi_subtract(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r = a;
    for (const auto& [v, k] : b.e) {
        auto it = r.e.find(v);
        if (it == r.e.end() || it->second < k) return std::nullopt;
        it->second -= k;
        if (it->second == 0) r.e.erase(it);
    }
    return r;
}

int mi_cmp(const MultiIndex& a, const MultiIndex& b) {
    int da = a.order(), db = b.order();
    if (da != db) return da < db ? -1 : 1;
    auto i = a.e.begin();
    auto j = b.e.begin();
    while (i != a.e.end() && j != b.e.end()) {
        if (i->first < j->first) return 1; // positive power on an earlier variable
        if (j->first < i->first) return -1;
        if (i->second != j->second) return i->second < j->second ? -1 : 1;
        ++i; ++j;
    }
    if (i != a.e.end()) return 1;
    if (j != b.e.end()) return -1;
    return 0;
}

std::vector<std::pair<MultiIndex, Int>> mi_below(const MultiIndex& alpha) {
    std::vector<std::pair<MultiIndex, Int>> out{{MultiIndex{}, Int(1)}};
    for (const auto& [v, k] : alpha.e) {
        std::vector<std::pair<MultiIndex, Int>> next;
        next.reserve(out.size() * (k + 1));
        for (const auto& [m, c] : out)
            for (int i = 0; i <= k; ++i)
                next.emplace_back(m + MultiIndex::of(v, i), c * binomial(k, i));
        out = std::move(next);
    }
    return out;
}

LinOp LinOp::scalar(const FieldElement& f) {
    LinOp a;
    if (!f.is_zero()) a.terms.emplace(MultiIndex{}, f);
    return a;
}

LinOp LinOp::derivation(const std::string& v, int k) {
    LinOp a;
    a.terms.emplace(MultiIndex::of(v, k), FieldElement::from_int(1));
    return a;
}

LinOp LinOp::term(const FieldElement& c, const MultiIndex& m) {
    LinOp a;
    if (!c.is_zero()) a.terms.emplace(m, c);
    return a;
}

std::optional<int> LinOp::order() const {
    if (terms.empty()) return std::nullopt;
    return terms.rbegin()->first.order();
}

FieldElement LinOp::coeff(const MultiIndex& a) const {
    auto it = terms.find(a);
    return it == terms.end() ? FieldElement() : it->second;
}

void LinOp::add_term(const MultiIndex& a, const FieldElement& c) {
    if (c.is_zero()) return;
    auto it = terms.find(a);
    if (it == terms.end()) {
        terms.emplace(a, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

LinOp operator+(const LinOp& a, const LinOp& b) {
    LinOp r = a;
    for (const auto& [m, c] : b.terms) r.add_term(m, c);
    return r;
}

LinOp operator-(const LinOp& a, const LinOp& b) {
    LinOp r = a;
    for (const auto& [m, c] : b.terms) r.add_term(m, -c);
    return r;
}

LinOp operator-(const LinOp& a) {
    LinOp r;
    for (const auto& [m, c] : a.terms) r.terms.emplace(m, -c);
    return r;
}

LinOp operator*(const FieldElement& f, const LinOp& a) {
    LinOp r;
    if (f.is_zero()) return r;
    for (const auto& [m, c] : a.terms) r.terms.emplace(m, f * c);
    return r;
}

namespace {

// memoized iterated derivatives of one field element
class DerivativeTower {
public:
    DerivativeTower(const FieldContext& ctx, const FieldElement& base) : ctx_(ctx) {
        memo_.emplace(MultiIndex{}, base);
    }

    const FieldElement& get(const MultiIndex& delta) {
        auto it = memo_.find(delta);
        if (it != memo_.end()) return it->second;
        const auto& [v, k] = *delta.e.begin();
        auto prev = mi_subtract(delta, MultiIndex::of(v, 1));
        FieldElement d = fe_derive(ctx_, get(*prev), v);
        return memo_.emplace(delta, std::move(d)).first->second;
    }

private:
    const FieldContext& ctx_;
    std::map<MultiIndex, FieldElement, MultiIndexLess> memo_;
};

} // namespace

LinOp op_mul(const FieldContext& ctx, const LinOp& a, const LinOp& b) {
    LinOp out;
    for (const auto& [beta, bc] : b.terms) {
        DerivativeTower db(ctx, bc);
        for (const auto& [alpha, ac] : a.terms) {
            // d^alpha (bc .) = sum_{gamma <= alpha} C(alpha,gamma) d^{alpha-gamma}(bc) d^gamma
            for (const auto& [gamma, binom] : mi_below(alpha)) {
                auto delta = mi_subtract(alpha, gamma);
                FieldElement c = ac * FieldElement::from_rat(Rat(binom)) * db.get(*delta);
                out.add_term(gamma + beta, c);
            }
        }
    }
    return out;
}

FieldElement op_apply(const FieldContext& ctx, const LinOp& a, const FieldElement& f) {
    DerivativeTower df(ctx, f);
    FieldElement out;
    for (const auto& [alpha, c] : a.terms) out = out + c * df.get(alpha);
    return out;
}

LinOp op_conjugate(const FieldContext& ctx, const LinOp& a, const FieldElement& g) {
    if (g.is_zero()) fail(ErrorKind::ZeroGauge, "conjugation by zero");
    return op_mul(ctx, op_mul(ctx, LinOp::scalar(g.inverse()), a), LinOp::scalar(g));
}

LinOp op_commutator(const FieldContext& ctx, const LinOp& a, const LinOp& b) {
    return op_mul(ctx, a, b) - op_mul(ctx, b, a);
}

std::pair<LinOp, LinOp> op_tdivide(const FieldContext& ctx, const LinOp& l, const std::string& t) {
    if (!ctx.has_variable(t)) fail(ErrorKind::UnknownVariable, "unknown variable '" + t + "'");
    LinOp a, rest;
    MultiIndex dt = MultiIndex::of(t, 1);
    for (const auto& [m, c] : l.terms) {
        if (auto q = mi_subtract(m, dt)) {
            a.terms.emplace(*q, c); // (c d^{m-e_t}) * d_t = c d^m exactly
        } else {
            rest.terms.emplace(m, c);
        }
    }
    return {a, rest};
}

std::optional<LinOp> op_right_divide(const FieldContext& ctx, const LinOp& x, const LinOp& l) {
    if (l.is_zero()) fail(ErrorKind::ZeroOperator, "right division by the zero operator");
    if (x.is_zero()) return LinOp::zero();
    int d = *x.order() - *l.order();
    if (d < 0) return std::nullopt; // orders add, so no quotient can exist

    // unknowns: one coefficient per multi-index of order <= d
    std::vector<MultiIndex> unknowns;
    MultiIndex cap;
    if (d > 0)
        for (const auto& v : ctx.variables()) cap.e[v] = d;
    for (const auto& [m, c] : mi_below(cap))
        if (m.order() <= d) unknowns.push_back(m);

    // column j holds d^{beta_j} * L expanded; match coefficients against X
    std::vector<LinOp> columns;
    columns.reserve(unknowns.size());
    std::set<MultiIndex, MultiIndexLess> rows_set;
    for (const auto& beta : unknowns) {
        LinOp col = op_mul(ctx, LinOp::term(FieldElement::from_int(1), beta), l);
        for (const auto& [m, c] : col.terms) rows_set.insert(m);
        columns.push_back(std::move(col));
    }
    for (const auto& [m, c] : x.terms) rows_set.insert(m);

    std::vector<std::vector<FieldElement>> mat;
    std::vector<FieldElement> rhs;
    for (const auto& row : rows_set) {
        std::vector<FieldElement> r;
        r.reserve(columns.size());
        for (const auto& col : columns) r.push_back(col.coeff(row));
        mat.push_back(std::move(r));
        rhs.push_back(x.coeff(row));
    }
    auto sol = linear_solve(std::move(mat), std::move(rhs));
    if (!sol) return std::nullopt;

    LinOp a;
    for (std::size_t j = 0; j < unknowns.size(); ++j) a.add_term(unknowns[j], (*sol)[j]);
    check_identity(op_mul(ctx, a, l) == x, "right division quotient");
    return a;
}

FieldElement fe_det(std::vector<std::vector<FieldElement>> m) {
    const std::size_t n = m.size();
    FieldElement det = FieldElement::from_int(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c].is_zero()) ++p;
        if (p == n) return FieldElement();
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det = det * m[c][c];
        FieldElement inv = m[c][c].inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c].is_zero()) continue;
            FieldElement f = m[i][c] * inv;
            for (std::size_t j = c; j < n; ++j) m[i][j] = m[i][j] - f * m[c][j];
        }
    }
    return det;
}

LinOp wronskian_operator(const FieldContext& ctx, const std::vector<FieldElement>& seeds,
                         const std::string& v) {
    if (seeds.empty()) fail(ErrorKind::UsageError, "wronskian_operator needs at least one seed");
    if (!ctx.has_variable(v)) fail(ErrorKind::UnknownVariable, "unknown variable '" + v + "'");
    const std::size_t m = seeds.size();

    // rows: derivative orders 0..m, columns: seeds
    std::vector<std::vector<FieldElement>> table(m + 1, std::vector<FieldElement>(m));
    for (std::size_t j = 0; j < m; ++j) {
        table[0][j] = seeds[j];
        for (std::size_t i = 1; i <= m; ++i) table[i][j] = fe_derive(ctx, table[i - 1][j], v);
    }

    auto minor_det = [&](std::size_t skip_row) {
        std::vector<std::vector<FieldElement>> sub;
        sub.reserve(m);
        for (std::size_t i = 0; i <= m; ++i)
            if (i != skip_row) sub.push_back(table[i]);
        return fe_det(std::move(sub));
    };

    FieldElement w = minor_det(m); // Wronskian of the seeds
    if (w.is_zero()) fail(ErrorKind::SingularWronskian, "seeds have zero Wronskian");

    // expand the (m+1)x(m+1) determinant along the formal last column
    LinOp op;
    for (std::size_t i = 0; i <= m; ++i) {
        FieldElement c = minor_det(i) / w;
        if ((m + i) % 2 == 1) c = -c;
        op.add_term(MultiIndex::of(v, static_cast<int>(i)), c);
    }
    for (const auto& s : seeds)
        check_identity(op_apply(ctx, op, s).is_zero(), "wronskian operator annihilates seeds");
    return op;
}

SymbolPoly op_symbol(const LinOp& a) {
    if (a.is_zero()) fail(ErrorKind::ZeroOperator, "principal symbol of the zero operator");
    SymbolPoly s;
    s.degree = *a.order();
    for (const auto& [m, c] : a.terms)
        if (m.order() == s.degree) s.terms.emplace(m, c);
    return s;
}

SymbolPoly operator*(const SymbolPoly& a, const SymbolPoly& b) {
    SymbolPoly r;
    r.degree = a.degree + b.degree;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            FieldElement c = ca * cb;
            if (c.is_zero()) continue;
            auto it = r.terms.find(ma + mb);
            if (it == r.terms.end()) {
                r.terms.emplace(ma + mb, c);
            } else {
                it->second = it->second + c;
                if (it->second.is_zero()) r.terms.erase(it);
            }
        }
    return r;
}

} // namespace darboux
