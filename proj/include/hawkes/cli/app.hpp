#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hawkes::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    ok = 0,
    usage_error = 2,      ///< malformed flags or model spec
    data_error = 3,       ///< input data failed validation
    numerical_error = 4,  ///< e.g. every optimizer restart diverged
};

/// Runs one command. args excludes the program name. Results go to files
/// under --output; out gets short human-readable summaries and err a single
/// `error: <kind>: <reason>` line on failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hawkes::cli
