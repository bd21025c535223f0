#pragma once

#include <ostream>
#include <string>

namespace ccfour::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kVerification = 2, kIo = 3 };

/// Runs one command line. Documents and tables go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Directory holding the bundled golden files.
std::string default_golden_dir();

}  // namespace ccfour::cli
