#pragma once

#include <string>
#include <vector>

namespace charges {

// Resolution schedule plus the finite stand-in for taking a limit: a series
// converges when its last `window` entries all sit within `tol` of the final
// entry. Sequences that fail the rule are flagged, never guessed at.
struct LimitConfig {
    std::vector<int> schedule;  // strictly increasing resolution indices
    int window = 8;             // entries inspected at the tail
    double tol = 1e-3;

    static LimitConfig doubling(int first = 1, int last = 256);
    static LimitConfig linear(int first, int last);

    // "start:end:x2" (geometric) or "start:end:+k" (arithmetic)
    static LimitConfig parse_schedule(const std::string& text);
};

struct LimitResult {
    double value = 0.0;      // last entry of the series
    bool converged = false;
    double gap = 0.0;        // max - min over the window when not converged
};

// Window rule against the series' own tail value.
LimitResult detect_limit(const std::vector<double>& series, const LimitConfig& cfg);

// Window rule against a fixed target (typically 0).
LimitResult detect_limit_to(const std::vector<double>& series, double target,
                            const LimitConfig& cfg);

} // namespace charges
