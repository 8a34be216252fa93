#pragma once

#include <iosfwd>

namespace mprelay::cli {

struct CheckOptions {
    // Deliberately corrupts the zero-forcing gain in the power-constraint
    // suite; exists so the checker itself can be shown to catch a defect.
    double zf_gain_scale = 1.0;
};

// Runs the internal consistency suites, one PASS/FAIL line per suite.
// Returns 0 when every suite passes, 1 otherwise.
int run_check(const CheckOptions& opts, std::ostream& out);

}  // namespace mprelay::cli
