#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace linepack::cli {

enum ExitCode : int
{
    kOk = 0,
    kUsage = 1,
    kInput = 2,
    kNumerical = 3,
    kCheckFailed = 4,
};

/// Runs one command line (without the program name). A file argument of "-"
/// reads from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace linepack::cli
