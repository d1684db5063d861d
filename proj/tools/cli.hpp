#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dlab::cli {

enum ExitCode : int {
    kOk = 0,
    kDomain = 2,
    kHorizon = 3,
    kInvariant = 4,
};

/// Runs one command line (args excludes the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dlab::cli
