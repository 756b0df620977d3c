// Command-line front end: denoise, qfunc, simulate, couple, caldoc.
#pragma once

#include <ostream>

namespace robwav::cli {

/// Exit codes: 0 success (including --help), 2 usage error, 1 runtime error.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace robwav::cli
