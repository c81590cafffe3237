#include "charges/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "charges/errors.hpp"

namespace charges {

void check_anchored(const AnchoredFunction& f, const FiniteMetricSpace& space, double tol) {
    if (f.anchors.empty()) throw DomainError("empty anchor set");
    if (f.anchors.size() != f.values.size())
        throw StructuralError("one value per anchor required");
    for (int a : f.anchors)
        if (a < 0 || a >= space.size()) throw DomainError("anchor index out of range");
    for (std::size_t p = 0; p < f.anchors.size(); ++p)
        for (std::size_t q = p + 1; q < f.anchors.size(); ++q)
            if (std::abs(f.values[p] - f.values[q]) >
                f.M * space.d(f.anchors[p], f.anchors[q]) + tol)
                throw DomainError("anchored values violate the Lipschitz constant");
}

double mcshane_extend(const AnchoredFunction& f, const FiniteMetricSpace& space, int x) {
    if (f.anchors.empty()) throw DomainError("empty anchor set");
    if (x < 0 || x >= space.size()) throw DomainError("point index out of range");
    double best = f.values[0] + f.M * space.d(x, f.anchors[0]);
    for (std::size_t p = 1; p < f.anchors.size(); ++p)
        best = std::min(best, f.values[p] + f.M * space.d(x, f.anchors[p]));
    return best;
}

std::vector<double> mcshane_extend_all(const AnchoredFunction& f,
                                       const FiniteMetricSpace& space) {
    std::vector<double> g(space.size());
    for (int x = 0; x < space.size(); ++x) g[x] = mcshane_extend(f, space, x);
    return g;
}

LipschitzCheck verify_lipschitz(const std::vector<double>& g,
                                const FiniteMetricSpace& space, double M, double tol) {
    if (static_cast<int>(g.size()) != space.size())
        throw StructuralError("function values do not match point count");
    LipschitzCheck check;
    for (int i = 0; i < space.size(); ++i)
        for (int j = i + 1; j < space.size(); ++j) {
            double excess = std::abs(g[i] - g[j]) - M * space.d(i, j);
            if (excess > check.worst_excess || check.worst_i < 0) {
                check.worst_excess = excess;
                check.worst_i = i;
                check.worst_j = j;
            }
        }
    check.ok = space.size() < 2 || check.worst_excess <= tol;
    return check;
}

std::vector<std::vector<double>> cone_family(const FiniteMetricSpace& space, int count,
                                             std::uint64_t seed) {
    if (count < 1) throw DomainError("count must be at least 1");
    if (space.size() == 0) return std::vector<std::vector<double>>(count);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> apex(0, space.size() - 1);
    std::uniform_int_distribution<int> napex(1, 3);
    std::uniform_real_distribution<double> offset(-space.bound(), space.bound());

    std::vector<std::vector<double>> family;
    family.reserve(count);
    for (int c = 0; c < count; ++c) {
        int k = napex(rng);
        std::vector<int> apices(k);
        std::vector<double> offsets(k);
        for (int t = 0; t < k; ++t) {
            apices[t] = apex(rng);
            offsets[t] = offset(rng);
        }
        std::vector<double> f(space.size());
        for (int x = 0; x < space.size(); ++x) {
            double v = offsets[0] + space.d(x, apices[0]);
            for (int t = 1; t < k; ++t)
                v = std::min(v, offsets[t] + space.d(x, apices[t]));
            f[x] = v;
        }
        family.push_back(std::move(f));
    }
    return family;
}

AnchoredFunction separated_indicator(const SeparatedSet& Y, const std::vector<int>& B) {
    if (Y.eps <= 0.0) throw DomainError("separated set needs a positive eps");
    for (int b : B)
        if (std::find(Y.indices.begin(), Y.indices.end(), b) == Y.indices.end())
            throw DomainError("indicator support must lie inside the separated set");
    AnchoredFunction f;
    f.anchors = Y.indices;
    f.M = 1.0 / Y.eps;
    f.values.reserve(Y.indices.size());
    for (int y : Y.indices)
        f.values.push_back(
            std::find(B.begin(), B.end(), y) != B.end() ? 1.0 : 0.0);
    return f;
}

} // namespace charges
