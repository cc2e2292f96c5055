#pragma once

#include <string>
#include <vector>

namespace smb::accept {

/// One verification criterion of the built-in benchmark suite.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

/// Runs the full suite; `workers` bounds the thread count of ensemble runs.
std::vector<CriterionResult> run_all(int workers);

bool all_passed(const std::vector<CriterionResult>& results);

/// "[PASS] 01 name  detail" style table.
std::string format_table(const std::vector<CriterionResult>& results);

}  // namespace smb::accept
