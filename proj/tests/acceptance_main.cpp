// Acceptance suite runner: one pass/fail line per criterion, exit code is
// the number of failed criteria.
#include <cstdio>

#include "hofer/acceptance.hpp"

int main() {
    int failures = 0;
    auto results = hofer::acceptance::run_all([](const hofer::acceptance::CriterionResult& r) {
        std::printf("%s\n", hofer::acceptance::format_line(r).c_str());
        std::fflush(stdout);
    });
    for (const auto& r : results)
        if (!r.pass) ++failures;
    std::printf("%zu criteria, %d failed\n", results.size(), failures);
    return failures;
}
