#pragma once

#include <string>
#include <vector>

namespace slantsub {

/// Exit codes: 0 all checks pass, 1 a check failed or a math precondition was
/// violated, 2 usage or parse error.
struct CliResult {
    int exit_code = 0;
    std::string output; // report rendering (stdout)
    std::string error;  // diagnostics (stderr)
};

/// Runs one driver invocation; args exclude the program name.
CliResult run_command(const std::vector<std::string>& args);

int cli_main(int argc, char** argv);

} // namespace slantsub
