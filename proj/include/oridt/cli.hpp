#pragma once

#include <ostream>

namespace oridt {

enum ExitCode { kExitOk = 0, kExitFailed = 1, kExitConfig = 2, kExitCap = 3 };

// Runs one command line; JSON report on `out`, human summary on `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oridt
