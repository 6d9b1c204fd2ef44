#pragma once

// Subcommand drivers behind the command-line tool and the oracle
// cross-check suite.

#include <iosfwd>
#include <string>
#include <vector>

#include "paracool/config.hpp"

namespace paracool {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitNumeric = 2, kExitValidation = 3 };

struct ValidationCheck {
    std::string name;
    double value = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Gaussian occupation vs truncated-Fock evolution (N = 200) on the grid
/// |xi| in {0, 1, 2}, phase in {0, pi/3}, lambda in {0.01, 0.02},
/// phi_p in {pi/2, 3pi/2}, t in {5, 20}.
std::vector<ValidationCheck> oracle_occupation_checks();

/// Closed-form squeezed-coherent outcome density vs the Fock overlap for r_sq <= 1.
std::vector<ValidationCheck> oracle_overlap_checks();

/// Squeeze-phase convention arbitration and remaining oracle spot checks.
std::vector<ValidationCheck> oracle_convention_checks();

/// All of the above.
std::vector<ValidationCheck> run_validation_suite();

/// Formats a double with 17 significant digits.
std::string format_double(double v);

/// Runs a parsed subcommand, writing `output` (CSV) and `output`.gp. Returns an ExitCode.
int run_subcommand(const RunConfig &cfg, const std::string &output, int workers, std::ostream &out);

}  // namespace paracool
