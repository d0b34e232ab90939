#pragma once

#include <string>
#include <vector>

namespace jcover::verify {

struct CheckResult {
    std::string name;
    bool ok;
    std::string note; // failure detail or a short statistic
};

struct Report {
    std::vector<CheckResult> checks;
    bool ok() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
};

// Runs the library's invariant suite. quick trims bounds so the suite
// finishes in seconds; the full run uses the documented bounds.
Report run(bool quick);

// Closed-form group orders, used as enumeration oracles.
unsigned long sl2_order(unsigned long n);
unsigned long psl2_order(unsigned long n);
unsigned long pgl2_order(unsigned long n);

// Enumerates every primitive integer matrix with determinant N and entries
// bounded by `entry_bound`, reduces each to Hermite form with plain integer
// arithmetic, and checks that exactly the listed coset representatives
// appear. Returns false if any matrix lands outside them.
bool coset_brute_force_matches(unsigned long level, long entry_bound);

} // namespace jcover::verify
