#include "charges/transport.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "charges/errors.hpp"
#include "charges/simplex.hpp"

namespace charges {

namespace {

struct Cell {
    int i, j;
    double flow;
};

// Transportation simplex over the positive-mass atoms of both marginals.
// Basis cells always form a spanning tree of the bipartite support graph.
class TransportSolver {
public:
    TransportSolver(std::vector<double> a, std::vector<double> b,
                    const std::vector<std::vector<double>>& cost, double tol)
        : a_(std::move(a)), b_(std::move(b)), cost_(cost), tol_(tol),
          m_(static_cast<int>(a_.size())), k_(static_cast<int>(b_.size())) {}

    std::vector<Cell> solve() {
        northwest_corner();
        const int cap = 100000;
        for (int iter = 0; iter < cap; ++iter) {
            compute_potentials();
            auto [ei, ej] = pick_entering(iter > 20000);
            if (ei < 0) return basis_;
            pivot(ei, ej);
        }
        throw SolverError("transportation simplex iteration cap exceeded");
    }

private:
    void northwest_corner() {
        std::vector<double> a = a_, b = b_;
        int i = 0, j = 0;
        for (;;) {
            double f = std::min(a[i], b[j]);
            basis_.push_back({i, j, f});
            a[i] -= f;
            b[j] -= f;
            if (i == m_ - 1 && j == k_ - 1) break;
            if (j == k_ - 1) ++i;
            else if (i == m_ - 1) ++j;
            else if (a[i] <= b[j]) ++i;
            else ++j;
        }
        in_basis_.assign(m_, std::vector<int>(k_, -1));
        for (std::size_t p = 0; p < basis_.size(); ++p)
            in_basis_[basis_[p].i][basis_[p].j] = static_cast<int>(p);
    }

    void compute_potentials() {
        u_.assign(m_, 0.0);
        v_.assign(k_, 0.0);
        std::vector<bool> udone(m_, false), vdone(k_, false);
        std::deque<int> queue;  // rows are 0..m-1, cols are m..m+k-1
        udone[0] = true;
        queue.push_back(0);
        while (!queue.empty()) {
            int node = queue.front();
            queue.pop_front();
            for (const Cell& c : basis_) {
                if (node < m_ && c.i == node && !vdone[c.j]) {
                    v_[c.j] = cost_[c.i][c.j] - u_[c.i];
                    vdone[c.j] = true;
                    queue.push_back(m_ + c.j);
                } else if (node >= m_ && c.j == node - m_ && !udone[c.i]) {
                    u_[c.i] = cost_[c.i][c.j] - v_[c.j];
                    udone[c.i] = true;
                    queue.push_back(c.i);
                }
            }
        }
    }

    std::pair<int, int> pick_entering(bool bland) const {
        int bi = -1, bj = -1;
        double best = -tol_;
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < k_; ++j) {
                if (in_basis_[i][j] >= 0) continue;
                double r = cost_[i][j] - u_[i] - v_[j];
                if (r < best) {
                    bi = i;
                    bj = j;
                    best = r;
                    if (bland) return {bi, bj};
                }
            }
        return {bi, bj};
    }

    // Unique cycle formed by the entering cell and the basis tree.
    void pivot(int ei, int ej) {
        // Path from row ei to col ej through basis edges.
        std::vector<int> parent(m_ + k_, -2);
        std::vector<int> via(m_ + k_, -1);  // basis position used to reach node
        std::deque<int> queue;
        parent[ei] = -1;
        queue.push_back(ei);
        while (!queue.empty()) {
            int node = queue.front();
            queue.pop_front();
            if (node == m_ + ej) break;
            for (std::size_t p = 0; p < basis_.size(); ++p) {
                const Cell& c = basis_[p];
                int other = -1;
                if (node < m_ && c.i == node) other = m_ + c.j;
                else if (node >= m_ && c.j == node - m_) other = c.i;
                else continue;
                if (parent[other] != -2) continue;
                parent[other] = node;
                via[other] = static_cast<int>(p);
                queue.push_back(other);
            }
        }
        if (parent[m_ + ej] == -2) throw SolverError("basis is not connected");

        std::vector<int> minus, plus;  // basis positions on the cycle by sign
        bool positive = false;         // edge into ej along the path gets minus
        for (int node = m_ + ej; parent[node] != -1; node = parent[node]) {
            (positive ? plus : minus).push_back(via[node]);
            positive = !positive;
        }

        double theta = basis_[minus[0]].flow;
        int leave = minus[0];
        for (int p : minus)
            if (basis_[p].flow < theta - 1e-15 ||
                (basis_[p].flow < theta + 1e-15 && p < leave)) {
                theta = basis_[p].flow;
                leave = p;
            }
        for (int p : plus) basis_[p].flow += theta;
        for (int p : minus) basis_[p].flow -= theta;

        in_basis_[basis_[leave].i][basis_[leave].j] = -1;
        basis_[leave] = {ei, ej, theta};
        in_basis_[ei][ej] = leave;
    }

    std::vector<double> a_, b_;
    const std::vector<std::vector<double>>& cost_;
    double tol_;
    int m_, k_;
    std::vector<Cell> basis_;
    std::vector<std::vector<int>> in_basis_;
    std::vector<double> u_, v_;
};

void check_pair(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                const FiniteMetricSpace& space) {
    if (mu.size() != space.size() || nu.size() != space.size())
        throw StructuralError("measures must live on the given space");
}

} // namespace

TransportPlan w1_primal(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                        const FiniteMetricSpace& space, const TransportTols& tols) {
    check_pair(mu, nu, space);
    const int n = space.size();

    std::vector<int> src, dst;
    std::vector<double> a, b;
    for (int i = 0; i < n; ++i)
        if (mu.weight(i) > 0.0) { src.push_back(i); a.push_back(mu.weight(i)); }
    for (int j = 0; j < n; ++j)
        if (nu.weight(j) > 0.0) { dst.push_back(j); b.push_back(nu.weight(j)); }

    std::vector<std::vector<double>> cost(src.size(), std::vector<double>(dst.size()));
    for (std::size_t i = 0; i < src.size(); ++i)
        for (std::size_t j = 0; j < dst.size(); ++j)
            cost[i][j] = space.d(src[i], dst[j]);

    TransportSolver solver(a, b, cost, tols.lp);
    std::vector<Cell> basis = solver.solve();

    TransportPlan plan;
    plan.coupling.assign(n, std::vector<double>(n, 0.0));
    for (const Cell& c : basis) {
        plan.coupling[src[c.i]][dst[c.j]] += c.flow;
        plan.cost += c.flow * cost[c.i][c.j];
    }

    // Marginal audit.
    for (int i = 0; i < n; ++i) {
        double row = 0.0, col = 0.0;
        for (int j = 0; j < n; ++j) {
            row += plan.coupling[i][j];
            col += plan.coupling[j][i];
        }
        if (std::abs(row - mu.weight(i)) > kTolMass || std::abs(col - nu.weight(i)) > kTolMass)
            throw SolverError("transport plan marginals drifted beyond tolerance");
    }
    return plan;
}

DualSolution w1_dual(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                     const FiniteMetricSpace& space, const TransportTols& tols) {
    check_pair(mu, nu, space);
    const int n = space.size();
    const double shift = std::max(space.bound(), 0.0);

    // Variables g_i = f_i + shift in [0, 2*shift]; g_i - g_j <= d_ij.
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            std::vector<double> row(n, 0.0);
            row[i] = 1.0;
            row[j] = -1.0;
            A.push_back(std::move(row));
            b.push_back(space.d(i, j));
        }
    for (int i = 0; i < n; ++i) {
        std::vector<double> row(n, 0.0);
        row[i] = 1.0;
        A.push_back(std::move(row));
        b.push_back(2.0 * shift);
    }
    std::vector<double> c(n);
    for (int i = 0; i < n; ++i) c[i] = mu.weight(i) - nu.weight(i);

    SimplexSolution lp = simplex_maximize(A, b, c, tols.lp);

    DualSolution sol;
    sol.value = std::max(lp.objective, 0.0);
    sol.witness.f.resize(n);
    for (int i = 0; i < n; ++i) sol.witness.f[i] = lp.x[i] - shift;
    return sol;
}

double duality_gap(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                   const FiniteMetricSpace& space, const TransportTols& tols) {
    return std::abs(w1_primal(mu, nu, space, tols).cost -
                    w1_dual(mu, nu, space, tols).value);
}

double tv_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
    if (mu.size() != nu.size())
        throw StructuralError("total variation needs measures on a common space");
    double sum = 0.0;
    for (int i = 0; i < mu.size(); ++i) sum += std::abs(mu.weight(i) - nu.weight(i));
    return 0.5 * sum;
}

double lipschitz_sup_estimate(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                              const FiniteMetricSpace& space,
                              const std::vector<std::vector<double>>& family,
                              const TransportTols& tols) {
    check_pair(mu, nu, space);
    double best = 0.0;
    for (const auto& f : family) {
        if (static_cast<int>(f.size()) != space.size())
            throw StructuralError("family member does not match point count");
        for (int i = 0; i < space.size(); ++i)
            for (int j = i + 1; j < space.size(); ++j)
                if (std::abs(f[i] - f[j]) > space.d(i, j) + tols.lp)
                    throw DomainError("family member is not 1-Lipschitz");
        best = std::max(best, std::abs(integrate(mu, f) - integrate(nu, f)));
    }
    return best;
}

} // namespace charges
