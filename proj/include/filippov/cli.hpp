#pragma once

#include <ostream>

namespace filippov {

/// Command-line front end. Returns 0 on success, 2 on argument errors and
/// 3 on numerical failure; diagnostics go to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace filippov
