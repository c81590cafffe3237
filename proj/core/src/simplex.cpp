#include "charges/simplex.hpp"

#include <cmath>

#include "charges/errors.hpp"

namespace charges {

SimplexSolution simplex_maximize(const std::vector<std::vector<double>>& A,
                                 const std::vector<double>& b,
                                 const std::vector<double>& c, double tol,
                                 int max_iter) {
    const int m = static_cast<int>(A.size());
    const int n = static_cast<int>(c.size());
    if (static_cast<int>(b.size()) != m) throw StructuralError("b size mismatch");
    for (const auto& row : A)
        if (static_cast<int>(row.size()) != n) throw StructuralError("A row size mismatch");
    for (double bi : b)
        if (bi < 0.0) throw DomainError("simplex requires b >= 0");

    // Tableau: m rows of [A | I | b], objective row of [-c | 0 | 0].
    std::vector<std::vector<double>> T(m + 1, std::vector<double>(n + m + 1, 0.0));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) T[i][j] = A[i][j];
        T[i][n + i] = 1.0;
        T[i][n + m] = b[i];
    }
    for (int j = 0; j < n; ++j) T[m][j] = -c[j];

    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;

    SimplexSolution sol;
    for (;;) {
        if (++sol.iterations > max_iter) throw SolverError("simplex iteration cap exceeded");
        // Bland: entering = lowest index with negative reduced cost.
        int enter = -1;
        for (int j = 0; j < n + m; ++j)
            if (T[m][j] < -tol) { enter = j; break; }
        if (enter < 0) break;

        int leave = -1;
        double best = 0.0;
        for (int i = 0; i < m; ++i) {
            if (T[i][enter] <= tol) continue;
            double ratio = T[i][n + m] / T[i][enter];
            if (leave < 0 || ratio < best - tol ||
                (ratio < best + tol && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) throw SolverError("LP is unbounded");

        double pivot = T[leave][enter];
        for (double& v : T[leave]) v /= pivot;
        for (int i = 0; i <= m; ++i) {
            if (i == leave) continue;
            double f = T[i][enter];
            if (f == 0.0) continue;
            for (int j = 0; j <= n + m; ++j) T[i][j] -= f * T[leave][j];
        }
        basis[leave] = enter;
    }

    sol.x.assign(n, 0.0);
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) sol.x[basis[i]] = T[i][n + m];
    sol.objective = 0.0;
    for (int j = 0; j < n; ++j) sol.objective += c[j] * sol.x[j];
    return sol;
}

} // namespace charges
