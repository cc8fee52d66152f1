#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hsmc::cli
{

enum exit_code : int
{
    holds = 0,
    fails = 1,
    input_error = 2,
    outside_fragment = 3,
    approximate = 4,
};

// Runs the command line `args` (without the program name) and returns the
// process exit code.
int run( const std::vector< std::string >& args, std::ostream& out, std::ostream& err );

} // namespace hsmc::cli
