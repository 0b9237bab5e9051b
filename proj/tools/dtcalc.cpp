#include <iostream>

#include "darboux/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const darboux::CommandResult r = darboux::run_command(args);
    std::cout << (r.json ? darboux::render_json(r) : darboux::render_human(r));
    return r.exit_code;
}
