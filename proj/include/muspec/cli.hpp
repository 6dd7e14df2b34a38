#ifndef MUSPEC_CLI_HPP
#define MUSPEC_CLI_HPP

#include <iosfwd>

namespace muspec {

/// Command-line entry point. Exit codes: 0 success, 1 a check came out
/// CONTRADICTED, 2 usage or runtime error.
int run_cli (int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace muspec

#endif // MUSPEC_CLI_HPP
