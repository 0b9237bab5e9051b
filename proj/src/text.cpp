#include "darboux/text.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace darboux {

namespace {

struct Token {
    enum Kind { Num, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(const std::string& src) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Token::Num, src.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            out.push_back({Token::Ident, src.substr(i, j - i), i});
            i = j;
            continue;
        }
        Token::Kind k;
        switch (c) {
        case '+': k = Token::Plus; break;
        case '-': k = Token::Minus; break;
        case '*': k = Token::Star; break;
        case '/': k = Token::Slash; break;
        case '^': k = Token::Caret; break;
        case '(': k = Token::LParen; break;
        case ')': k = Token::RParen; break;
        default:
            fail(ErrorKind::SyntaxError, std::string("unexpected character '") + c + "'", i);
        }
        out.push_back({k, std::string(1, c), i});
        ++i;
    }
    out.push_back({Token::End, "", src.size()});
    return out;
}

class Parser {
public:
    Parser(const FieldContext& ctx, const std::string& src, const BindingLookup& bindings)
        : ctx_(ctx), bindings_(bindings), toks_(tokenize(src)) {}

    LinOp run() {
        LinOp a = expr();
        if (peek().kind != Token::End)
            fail(ErrorKind::SyntaxError, "unexpected '" + peek().text + "'", peek().pos);
        return a;
    }

private:
    const FieldContext& ctx_;
    const BindingLookup& bindings_;
    std::vector<Token> toks_;
    std::size_t i_ = 0;

    const Token& peek() const { return toks_[i_]; }
    const Token& take() { return toks_[i_++]; }
    bool eat(Token::Kind k) {
        if (peek().kind != k) return false;
        ++i_;
        return true;
    }

    LinOp expr() {
        bool neg = eat(Token::Minus);
        LinOp a = term();
        if (neg) a = -a;
        while (true) {
            if (eat(Token::Plus)) a = a + term();
            else if (eat(Token::Minus)) a = a - term();
            else return a;
        }
    }

    LinOp term() {
        LinOp a = factor();
        while (true) {
            if (eat(Token::Star)) {
                a = op_mul(ctx_, a, factor());
            } else if (peek().kind == Token::Slash) {
                std::size_t at = take().pos;
                LinOp d = factor();
                if (d.is_zero()) fail(ErrorKind::DivisionByZero, "division by zero", at);
                if (*d.order() > 0)
                    fail(ErrorKind::NonScalarDivisor,
                         "division by an operator of positive order", at);
                FieldElement g = d.coeff(MultiIndex{});
                a = op_mul(ctx_, a, LinOp::scalar(g.inverse()));
            } else {
                return a;
            }
        }
    }

    LinOp factor() {
        LinOp a = atom();
        if (!eat(Token::Caret)) return a;
        const Token& t = peek();
        if (t.kind != Token::Num)
            fail(ErrorKind::SyntaxError, "expected a number after '^'", t.pos);
        take();
        if (t.text.size() > 3 || std::stol(t.text) > 100)
            fail(ErrorKind::SyntaxError, "exponent too large", t.pos);
        long n = std::stol(t.text);
        LinOp r = LinOp::identity();
        for (long k = 0; k < n; ++k) r = op_mul(ctx_, r, a);
        return r;
    }

    LinOp atom() {
        const Token& t = peek();
        switch (t.kind) {
        case Token::Num: {
            take();
            Int v(t.text);
            return LinOp::scalar(FieldElement::from_rat(Rat(v)));
        }
        case Token::Ident: {
            take();
            // 'D' + variable is a derivation and shadows any other reading
            if (t.text.size() > 1 && t.text[0] == 'D' && ctx_.has_variable(t.text.substr(1)))
                return LinOp::derivation(t.text.substr(1));
            if (auto s = ctx_.resolve(t.text)) return LinOp::scalar(FieldElement::from_symbol(*s));
            if (bindings_)
                if (auto b = bindings_(t.text)) return *b;
            fail(ErrorKind::UnknownSymbol, "unknown symbol '" + t.text + "'", t.pos);
        }
        case Token::LParen: {
            take();
            LinOp a = expr();
            if (!eat(Token::RParen))
                fail(ErrorKind::SyntaxError, "expected ')'", peek().pos);
            return a;
        }
        default:
            fail(ErrorKind::SyntaxError, "unexpected '" + (t.kind == Token::End ? std::string("end of input") : t.text) + "'", t.pos);
        }
    }
};

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

std::string mono_str(const Rat& c, const Monomial& m) {
    std::string factors;
    for (const auto& [s, e] : m.factors) {
        if (!factors.empty()) factors += '*';
        factors += s.name;
        if (e > 1) factors += '^' + std::to_string(e);
    }
    if (factors.empty()) return rat_str(c);
    if (c == 1) return factors;
    if (c == -1) return "-" + factors;
    return rat_str(c) + "*" + factors;
}

// ascending term order, e.g. "2+x"
std::string poly_str(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : p.terms) {
        std::string t = mono_str(c, m);
        if (out.empty()) {
            out = t;
        } else if (t[0] == '-') {
            out += "-" + t.substr(1);
        } else {
            out += "+" + t;
        }
    }
    return out;
}

// single term, no internal top-level '+'/'-' (so it can be joined with '*')
std::string fe_numerator_str(const Poly& num) {
    if (num.terms.size() == 1) {
        const auto& [m, c] = *num.terms.begin();
        return mono_str(c, m);
    }
    return "(" + poly_str(num) + ")";
}

std::string fe_str(const FieldElement& x) {
    if (x.is_zero()) return "0";
    std::string out = fe_numerator_str(x.num());
    if (x.den().is_constant() && x.den().constant_value() == 1) return out;
    const Poly& d = x.den();
    bool den_simple = d.terms.size() == 1 && d.leading_coeff() == 1 &&
                      d.leading_monomial().factors.size() == 1 &&
                      d.leading_monomial().factors[0].second == 1;
    bool den_const = d.is_constant();
    if (den_simple || den_const)
        return out + "/" + poly_str(d);
    return out + "/(" + poly_str(d) + ")";
}

} // namespace

LinOp parse_operator(const FieldContext& ctx, const std::string& src,
                     const BindingLookup& bindings) {
    return Parser(ctx, src, bindings).run();
}

FieldElement parse_field_element(const FieldContext& ctx, const std::string& src,
                                 const BindingLookup& bindings) {
    LinOp a = parse_operator(ctx, src, bindings);
    if (a.is_zero()) return FieldElement();
    if (*a.order() > 0)
        fail(ErrorKind::UsageError, "expected a field element, got an operator: " + src);
    return a.coeff(MultiIndex{});
}

std::string format_field_element(const FieldElement& x) { return fe_str(x); }

std::string format_operator(const LinOp& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (auto it = a.terms.rbegin(); it != a.terms.rend(); ++it) {
        const auto& [mi, c] = *it;
        std::string dpart;
        for (const auto& [v, k] : mi.e) {
            if (!dpart.empty()) dpart += '*';
            dpart += "D" + v;
            if (k > 1) dpart += '^' + std::to_string(k);
        }
        std::string t;
        if (dpart.empty()) {
            t = fe_str(c);
        } else if (c.is_one()) {
            t = dpart;
        } else if ((-c).is_one()) {
            t = "-" + dpart;
        } else {
            t = fe_str(c) + "*" + dpart;
        }
        if (out.empty()) {
            out = t;
        } else if (t[0] == '-') {
            out += " - " + t.substr(1);
        } else {
            out += " + " + t;
        }
    }
    return out;
}

} // namespace darboux
