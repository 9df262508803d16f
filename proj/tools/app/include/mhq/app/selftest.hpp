#pragma once

// Invariant checks across all modules at reduced sample counts.

#include <string>
#include <vector>

#include "mhq/schemes.hpp"

namespace mhq::app {

struct SelftestOptions {
    /// Coefficients handed to the reconstruction check; perturbing them must
    /// make that check fail.
    ReconstructionCoefficients coefficients{};
    unsigned threads = 1;
};

struct CheckResult {
    std::string name;
    bool ok = false;
    std::string detail;
    double seconds = 0.0;
};

struct SelftestReport {
    std::vector<CheckResult> checks;
    bool ok() const;
};

SelftestReport run_selftest(const SelftestOptions &options);

}  // namespace mhq::app
