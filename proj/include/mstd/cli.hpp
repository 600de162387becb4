#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mstd::cli {

// Exit status: 0 success, 1 domain or capacity error, 2 usage error.
enum ExitCode : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

// args[0] is the program name. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mstd::cli
