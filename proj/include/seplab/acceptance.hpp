#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace seplab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;  // one line of numeric evidence
    double seconds = 0;
};

// Release gate: eleven self-contained checks with every constant and tolerance pinned
// in acceptance.cpp. When `live` is given, one PASS/FAIL line is streamed per
// criterion as it finishes. Results do not depend on `threads`.
std::vector<CriterionResult> run_acceptance_suite(int threads = 1,
                                                  std::ostream* live = nullptr);

bool all_passed(const std::vector<CriterionResult>& results);

std::string format_criterion_line(const CriterionResult& r);

}  // namespace seplab
