// Acceptance suite: runs every criterion at its stated tolerance (all exact)
// and prints one pass/fail line per criterion. Exits nonzero if any fail.

#include <cstdio>

#include "leafmass/verify.hpp"

int main() {
    auto results = leafmass::run_acceptance();
    int failed = 0;
    for (const auto& r : results) {
        std::printf("%-28s %s  (%.2fs / budget %.0fs)\n", r.id.c_str(),
                    r.pass ? "PASS" : "FAIL", r.seconds, r.budget_seconds);
        for (const auto& f : r.failures) std::printf("    clause failed: %s\n", f.c_str());
        if (!r.pass) ++failed;
    }
    std::printf("%zu/%zu criteria passed\n", results.size() - static_cast<size_t>(failed),
                results.size());
    return failed == 0 ? 0 : 1;
}
