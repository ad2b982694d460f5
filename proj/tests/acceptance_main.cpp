// Acceptance gate: one line per verification criterion, nonzero exit if any
// fails. Run via ctest or directly; the same checks back `cgoscat verify`.
#include <cstdio>

#include "cgoscat/checks.hpp"

int main() {
    int failures = 0;
    for (int id = 1; id <= cgoscat::checks::count(); ++id) {
        const cgoscat::checks::CheckResult r = cgoscat::checks::run_check(id);
        std::printf("%s %2d %s: %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.c_str());
        std::fflush(stdout);
        if (!r.pass) ++failures;
    }
    if (failures > 0) std::printf("%d of %d criteria failed\n", failures, cgoscat::checks::count());
    return failures == 0 ? 0 : 1;
}
