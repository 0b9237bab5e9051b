#pragma once

#include <algorithm>
#include <compare>
#include <string>
#include <vector>

namespace darboux {

// Global symbol order: variables first, then adjoined transcendentals, then
// jet symbols of generic functions; alphabetical within each kind.
enum class SymbolKind : unsigned char { Variable = 0, Adjoined = 1, Jet = 2 };

struct Symbol {
    SymbolKind kind = SymbolKind::Variable;
    std::string name; // display name; for jets this is base + "_" + sorted suffix

    // jets only: the generic base and the (sorted, with multiplicity) list of
    // variables it has been derived by. Empty derivs = the bare generic symbol.
    std::string base;
    std::vector<std::string> derivs;

    static Symbol variable(std::string n) {
        Symbol s; s.kind = SymbolKind::Variable; s.name = std::move(n); return s;
    }
    static Symbol adjoined(std::string n) {
        Symbol s; s.kind = SymbolKind::Adjoined; s.name = std::move(n); return s;
    }
    static Symbol jet(std::string base, std::vector<std::string> derivs) {
        Symbol s;
        s.kind = SymbolKind::Jet;
        std::sort(derivs.begin(), derivs.end());
        s.base = std::move(base);
        s.derivs = std::move(derivs);
        s.name = s.base;
        if (!s.derivs.empty()) {
            s.name += '_';
            for (const auto& v : s.derivs) s.name += v;
        }
        return s;
    }

    // one more derivative by variable v
    Symbol jet_successor(const std::string& v) const {
        auto d = derivs;
        d.push_back(v);
        return jet(base, std::move(d));
    }

    friend std::strong_ordering operator<=>(const Symbol& a, const Symbol& b) {
        if (a.kind != b.kind) return a.kind <=> b.kind;
        if (auto c = a.name <=> b.name; c != 0) return c;
        return a.derivs <=> b.derivs; // tiebreak for display-name collisions
    }
    friend bool operator==(const Symbol& a, const Symbol& b) = default;
};

} // namespace darboux
