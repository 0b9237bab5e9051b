#pragma once

#include <json.hpp>

#include "darboux/text.hpp"

namespace darboux {

// A working context plus named operator bindings, loaded from JSON:
//   {
//     "variables": ["x", "y"],
//     "adjoined":  {"E": {"y": "3*E"}},
//     "generic":   ["a", "b"],
//     "bindings":  {"L": "Dx*Dy + a*Dx"}
//   }
// Binding expressions may refer to earlier bindings by name. Binding names
// must not collide with context symbols.
struct Session {
    FieldContext ctx;
    std::vector<std::pair<std::string, LinOp>> bindings;

    Session() : ctx({}, {}, {}) {}
    explicit Session(FieldContext c) : ctx(std::move(c)) {}

    std::optional<LinOp> binding(const std::string& name) const;
    LinOp require_binding(const std::string& name) const;
    BindingLookup lookup() const;

    // Parses src against this session's context and bindings.
    LinOp parse(const std::string& src) const;
    FieldElement parse_scalar(const std::string& src) const;
};

Session session_from_json(const nlohmann::ordered_json& doc);
Session load_session(const std::string& path);

} // namespace darboux
