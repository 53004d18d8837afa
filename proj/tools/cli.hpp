#pragma once

#include <iosfwd>

namespace minbase::cli {

/// Runs the command line in-process. Exit codes: 0 verified pass, 1 verified
/// fail, 2 refusal (bad input, precondition, or budget).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace minbase::cli
