#pragma once

// The acceptance suite: each criterion runs its instances against the exact
// oracles and reports exact violation counts and measured constants.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "polyapprox/io.hpp"

namespace polyapprox {

struct CriterionReport {
    int id = 0;
    std::string name;
    bool passed = false;
    std::int64_t checks = 0;
    std::int64_t violations = 0;
    Json measured = Json::object();
    double seconds = 0.0;
    double time_limit = 0.0;  // 0: none
};

/// Runs one command line and returns its stdout; used by the determinism check.
using CommandRunner = std::function<std::string(const std::vector<std::string>&)>;

struct SuiteOptions {
    /// Fraction of the full instance counts (1 = the stated criteria).
    double scale = 1.0;
    std::uint64_t seed = 1;
    CommandRunner runner;  // empty: run the CLI in-process
    /// Also repeat a small `selftest` run in the determinism check.
    bool include_selftest = false;
};

CriterionReport check_width_queries(const SuiteOptions& o);
CriterionReport check_kernel_scaling(const SuiteOptions& o);
CriterionReport check_identities(const SuiteOptions& o);
CriterionReport check_convex_min(const SuiteOptions& o);
CriterionReport check_intersection(const SuiteOptions& o);
CriterionReport check_minkowski(const SuiteOptions& o);
CriterionReport check_width(const SuiteOptions& o);
CriterionReport check_conversion(const SuiteOptions& o);
CriterionReport check_determinism(const SuiteOptions& o);

/// All nine in order; `done` is called after each.
std::vector<CriterionReport> run_acceptance(const SuiteOptions& o,
                                            const std::function<void(const CriterionReport&)>& done = {});

/// One "PASS|FAIL <id> <name> ..." line.
std::string summary_line(const CriterionReport& r);
Json to_json(const CriterionReport& r, bool timings);

}  // namespace polyapprox
