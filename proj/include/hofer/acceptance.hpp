#pragma once

#include <functional>
#include <string>
#include <vector>

namespace hofer::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

// Runs the full acceptance suite; progress lines go to the logger as each
// criterion finishes. Every tolerance is pinned in the implementation.
std::vector<CriterionResult> run_all(const std::function<void(const CriterionResult&)>& on_result);

// Formats one pass/fail line.
std::string format_line(const CriterionResult& r);

}  // namespace hofer::acceptance
