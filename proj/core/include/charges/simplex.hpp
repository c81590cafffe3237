#pragma once

#include <vector>

namespace charges {

// Dense primal simplex for  max c.x  s.t.  A x <= b,  x >= 0,  with b >= 0
// so the slack basis is feasible. Bland's rule throughout; sized for the
// desk-scale LPs this library produces.
struct SimplexSolution {
    std::vector<double> x;
    double objective = 0.0;
    int iterations = 0;
};

SimplexSolution simplex_maximize(const std::vector<std::vector<double>>& A,
                                 const std::vector<double>& b,
                                 const std::vector<double>& c,
                                 double tol = 1e-10, int max_iter = 200000);

} // namespace charges
