#include "charges/families.hpp"

#include <cmath>
#include <random>

#include "charges/errors.hpp"

namespace charges {

MeasureFamily family_point_at_half_inv() {
    return {[](int n) {
        if (n < 1) throw DomainError("resolution index must be positive");
        return Atoms{{{1.0 / (2.0 * n)}}, {1.0}};
    }};
}

MeasureFamily family_point_at_inv() {
    return {[](int n) {
        if (n < 1) throw DomainError("resolution index must be positive");
        return Atoms{{{1.0 / n}}, {1.0}};
    }};
}

MeasureFamily family_point_const(double loc) {
    return {[loc](int) { return Atoms{{{loc}}, {1.0}}; }};
}

MeasureFamily family_uniform_grid() {
    return {[](int n) {
        if (n < 1) throw DomainError("resolution index must be positive");
        Atoms atoms;
        atoms.coords.reserve(n);
        atoms.weights.assign(n, 1.0 / n);
        for (int j = 1; j <= n; ++j) atoms.coords.push_back({(j - 0.5) / n});
        return atoms;
    }};
}

MeasureFamily family_constant(Atoms atoms) {
    return {[atoms](int) { return atoms; }};
}

std::vector<BoundedLipFn> cone_functions(int dim, int count, std::uint64_t seed,
                                         double domain_bound) {
    if (count < 1) throw DomainError("count must be at least 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> napex(1, 3);
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    std::uniform_real_distribution<double> offset(-domain_bound, domain_bound);

    std::vector<BoundedLipFn> fns;
    fns.reserve(count);
    for (int c = 0; c < count; ++c) {
        int k = napex(rng);
        std::vector<std::vector<double>> apices(k, std::vector<double>(dim));
        std::vector<double> offsets(k);
        for (int t = 0; t < k; ++t) {
            for (int d = 0; d < dim; ++d) apices[t][d] = coord(rng);
            offsets[t] = offset(rng);
        }
        BoundedLipFn fn;
        fn.id = "cone" + std::to_string(c);
        fn.lip_M = 1.0;
        fn.bound = 2.0 * domain_bound + std::sqrt(static_cast<double>(dim));
        fn.eval = [apices, offsets](const std::vector<double>& x) {
            double best = 0.0;
            for (std::size_t t = 0; t < apices.size(); ++t) {
                double s = 0.0;
                for (std::size_t d = 0; d < x.size(); ++d) {
                    double diff = x[d] - apices[t][d];
                    s += diff * diff;
                }
                double v = offsets[t] + std::sqrt(s);
                if (t == 0 || v < best) best = v;
            }
            return best;
        };
        fns.push_back(std::move(fn));
    }
    return fns;
}

} // namespace charges
