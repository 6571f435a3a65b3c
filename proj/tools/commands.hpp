#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eap::cli {

    /// Exit codes shared by every command.
    enum ExitCode : int { Ok = 0, UsageError = 1, Abandoned = 2 };

    /// Run the command line `args` (args[0] is the program name). Reports go to `out`,
    /// diagnostics to `err`.
    int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

    /// Parse a list of reals separated by commas and/or whitespace. Throws eap::ParseError.
    std::vector<double> parse_values(const std::string& text);

} // namespace eap::cli
