#pragma once

#include <iosfwd>

namespace sqdeph {

/// Command-line entry point. Exit codes: 0 success, 1 invalid input or I/O
/// failure, 2 numerical failure (quadrature did not converge, a closed form
/// could not be evaluated, or verify exceeded its threshold).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sqdeph
