#pragma once

#include <iosfwd>

namespace ugof {

/// Entry point of the ugof command-line tool, usable in-process.
/// Exit codes: 0 retain (or success), 1 rejection by T_n, 2 usage or
/// input error.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace ugof
