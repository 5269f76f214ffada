#ifndef SYMRED_CLI_HPP
#define SYMRED_CLI_HPP

#include <iosfwd>

namespace symred {

/// Exit codes: 0 success, 1 parse or usage error, 2 an expectation was not met.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace symred

#endif  // SYMRED_CLI_HPP
