#pragma once

#include "darboux/session.hpp"

namespace darboux {

// Result of one CLI invocation. status is "true"/"false" for verdict
// commands, "ok" for constructive ones, "error" on failure; exit_code
// mirrors it: 0 success/true, 1 negative verdict, 2 usage or parse error,
// 3 math error.
struct CommandResult {
    std::string status = "ok";
    nlohmann::ordered_json payload = nlohmann::ordered_json::object();
    std::string diagnostics;
    int exit_code = 0;
    bool json = false; // --json was passed; selects the output renderer
};

// args excludes argv[0]. Never throws: errors land in the result.
CommandResult run_command(const std::vector<std::string>& args);

std::string render_human(const CommandResult& r);
std::string render_json(const CommandResult& r);

} // namespace darboux
