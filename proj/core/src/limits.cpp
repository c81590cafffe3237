#include "charges/limits.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "charges/errors.hpp"

namespace charges {

LimitConfig LimitConfig::doubling(int first, int last) {
    LimitConfig cfg;
    for (int n = first; n <= last; n *= 2) cfg.schedule.push_back(n);
    return cfg;
}

LimitConfig LimitConfig::linear(int first, int last) {
    LimitConfig cfg;
    for (int n = first; n <= last; ++n) cfg.schedule.push_back(n);
    return cfg;
}

LimitConfig LimitConfig::parse_schedule(const std::string& text) {
    auto p1 = text.find(':');
    auto p2 = text.find(':', p1 == std::string::npos ? p1 : p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos)
        throw DomainError("schedule must look like start:end:x2 or start:end:+1: " + text);
    int first = std::atoi(text.substr(0, p1).c_str());
    int last = std::atoi(text.substr(p1 + 1, p2 - p1 - 1).c_str());
    std::string step = text.substr(p2 + 1);
    if (first <= 0 || last < first || step.size() < 2)
        throw DomainError("bad schedule: " + text);
    LimitConfig cfg;
    if (step[0] == 'x') {
        int f = std::atoi(step.c_str() + 1);
        if (f < 2) throw DomainError("geometric step must be >= 2: " + text);
        for (int n = first; n <= last; n *= f) cfg.schedule.push_back(n);
    } else if (step[0] == '+') {
        int d = std::atoi(step.c_str() + 1);
        if (d < 1) throw DomainError("arithmetic step must be >= 1: " + text);
        for (int n = first; n <= last; n += d) cfg.schedule.push_back(n);
    } else {
        throw DomainError("schedule step must start with 'x' or '+': " + text);
    }
    return cfg;
}

namespace {

LimitResult window_check(const std::vector<double>& series, double reference,
                         const LimitConfig& cfg) {
    if (series.empty()) throw DomainError("empty series");
    LimitResult r;
    r.value = series.back();
    std::size_t w = static_cast<std::size_t>(std::max(cfg.window, 1));
    std::size_t begin = series.size() > w ? series.size() - w : 0;
    double worst = 0.0, lo = series[begin], hi = series[begin];
    for (std::size_t i = begin; i < series.size(); ++i) {
        worst = std::max(worst, std::abs(series[i] - reference));
        lo = std::min(lo, series[i]);
        hi = std::max(hi, series[i]);
    }
    r.converged = worst <= cfg.tol;
    r.gap = r.converged ? 0.0 : hi - lo;
    return r;
}

} // namespace

LimitResult detect_limit(const std::vector<double>& series, const LimitConfig& cfg) {
    return window_check(series, series.empty() ? 0.0 : series.back(), cfg);
}

LimitResult detect_limit_to(const std::vector<double>& series, double target,
                            const LimitConfig& cfg) {
    LimitResult r = window_check(series, target, cfg);
    if (r.converged) r.value = target;
    return r;
}

} // namespace charges
