// Prints one pass/fail line per acceptance criterion; exits nonzero if any
// criterion fails.

#include "bpd/verify.hpp"

#include <cstdio>

int main() {
    bool all = true;
    for (const bpd::criterion_result& r : bpd::run_acceptance()) {
        std::printf("%s  %2d %s%s%s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.empty() ? "" : "  -- ", r.detail.c_str());
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
