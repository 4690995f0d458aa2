#pragma once

#include <string>
#include <vector>

namespace dynavg {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Runs the verification suite at desk scale (k = 8, T = 10000, dim = 10,
/// PA rule on unit-norm streams). Every check is deterministic; thresholds are
/// fixed in code. Completes in a few seconds. An empty `only` list runs all
/// ten criteria; otherwise just the listed ids.
std::vector<CriterionResult> run_acceptance_suite(const std::vector<int>& only = {});

bool all_passed(const std::vector<CriterionResult>& results);

/// "criterion <id> PASS|FAIL  <name> -- <detail>"
std::string format_criterion_line(const CriterionResult& result);

}  // namespace dynavg
