#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "besselmu/bounds.hpp"

namespace besselmu {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitDomain = 1,      ///< domain, configuration or usage error
    kExitNumerical = 2,   ///< truncation or quadrature failure
    kExitAudit = 3,       ///< a ratio fell outside its envelope interval
};

/// Numerical errors first, then points outside the envelope's region, then
/// ratios outside the interval.
int audit_exit_code(const AuditReport& report);

/// Runs one command. args excludes the program name; data goes to out and
/// diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace besselmu
