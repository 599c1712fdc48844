#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lagmin::cli {

enum ExitCode : int {
    ok = 0,
    usage = 1,
    numeric_failure = 2,
    verification_failure = 3,
};

/// Runs one command line (args excludes the program name). Machine output
/// goes to `out` unless --out/--report name a file; the summary goes to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lagmin::cli
