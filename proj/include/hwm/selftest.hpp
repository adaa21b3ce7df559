#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hwm/model.hpp"

namespace hwm {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail; // measured values, tolerances, or the failure reason
    double seconds = 0.0;
};

struct SelftestReport {
    std::vector<CriterionResult> results;
    std::uint64_t seed = 0;
    int workers = 1;
    double tolerance = 0.0;
    bool all_passed() const;
};

/// Runs the full acceptance suite with the configured seed/budgets. The
/// comparison tolerances scale with config.tolerance (1e-8 reproduces the
/// stated defaults). Failures never throw; they become report entries.
SelftestReport run_selftest(const RunConfig& config = {});

/// One line per criterion plus a trailing summary; returns all_passed().
bool print_selftest_report(const SelftestReport& report, std::ostream& out);

} // namespace hwm
