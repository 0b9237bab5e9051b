#include "darboux/session.hpp"

#include <fstream>

namespace darboux {

namespace {

std::vector<std::string> string_array(const nlohmann::ordered_json& j, const std::string& key) {
    if (!j.is_array()) fail(ErrorKind::UsageError, "\"" + key + "\" must be an array of strings");
    std::vector<std::string> out;
    for (const auto& item : j) {
        if (!item.is_string()) fail(ErrorKind::UsageError, "\"" + key + "\" must contain only strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

} // namespace

std::optional<LinOp> Session::binding(const std::string& name) const {
    for (const auto& [n, op] : bindings)
        if (n == name) return op;
    return std::nullopt;
}

LinOp Session::require_binding(const std::string& name) const {
    auto op = binding(name);
    if (!op) fail(ErrorKind::UnknownSymbol, "no binding named " + name);
    return *op;
}

BindingLookup Session::lookup() const {
    return [this](const std::string& name) { return binding(name); };
}

LinOp Session::parse(const std::string& src) const {
    return parse_operator(ctx, src, lookup());
}

FieldElement Session::parse_scalar(const std::string& src) const {
    return parse_field_element(ctx, src);
}

Session session_from_json(const nlohmann::ordered_json& doc) {
    if (!doc.is_object()) fail(ErrorKind::UsageError, "session document must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "variables" && key != "adjoined" && key != "generic" && key != "bindings")
            fail(ErrorKind::UsageError, "unknown session key: " + key);
    }

    std::vector<std::string> variables;
    if (doc.contains("variables")) variables = string_array(doc["variables"], "variables");

    std::vector<std::string> adjoined_names;
    if (doc.contains("adjoined")) {
        if (!doc["adjoined"].is_object())
            fail(ErrorKind::UsageError, "\"adjoined\" must be an object");
        for (const auto& [name, table] : doc["adjoined"].items()) {
            (void)table;
            adjoined_names.push_back(name);
        }
    }

    std::vector<std::string> generic;
    if (doc.contains("generic")) generic = string_array(doc["generic"], "generic");

    Session s{FieldContext(variables, adjoined_names, generic)};

    // Derivative tables can mention any context symbol (including the
    // adjoined functions themselves), so parse them after construction.
    if (doc.contains("adjoined")) {
        for (const auto& [name, table] : doc["adjoined"].items()) {
            if (!table.is_object())
                fail(ErrorKind::UsageError, "derivative table for " + name + " must be an object");
            for (const auto& [var, expr] : table.items()) {
                if (!expr.is_string())
                    fail(ErrorKind::UsageError, "derivative of " + name + " must be a string expression");
                s.ctx.set_adjoined_derivative(name, var,
                                              parse_field_element(s.ctx, expr.get<std::string>()));
            }
        }
    }

    if (doc.contains("bindings")) {
        if (!doc["bindings"].is_object())
            fail(ErrorKind::UsageError, "\"bindings\" must be an object");
        for (const auto& [name, expr] : doc["bindings"].items()) {
            if (!expr.is_string())
                fail(ErrorKind::UsageError, "binding " + name + " must be a string expression");
            if (s.ctx.resolve(name))
                fail(ErrorKind::UsageError, "binding " + name + " collides with a context symbol");
            if (s.binding(name)) fail(ErrorKind::UsageError, "duplicate binding: " + name);
            s.bindings.emplace_back(name, s.parse(expr.get<std::string>()));
        }
    }
    return s;
}

Session load_session(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::UsageError, "cannot open session file: " + path);
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::UsageError, std::string("invalid session JSON: ") + e.what());
    }
    return session_from_json(doc);
}

} // namespace darboux
