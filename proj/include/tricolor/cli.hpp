/**
 * @file cli.hpp
 * @brief Command-line front end over the library.
 */
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tricolor
{

/// Exit codes of run_cli().
enum ExitCode : int
{
    kExitOk = 0,
    /// The command ran but the domain operation failed (e.g. no derivation).
    kExitDomainFailure = 1,
    /// Bad arguments or unparsable input files.
    kExitUsage = 2,
};

/**
 * Runs one subcommand. `args` excludes the program name. Results go to
 * `out`; diagnostics go to `err`.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tricolor
