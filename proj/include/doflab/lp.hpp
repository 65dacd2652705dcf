#pragma once

#include <doflab/matrix.hpp>
#include <doflab/rational.hpp>

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace doflab {

struct LpResult {
    Rational value;
    std::vector<Rational> solution;
};

// Exact primal simplex for max c.x subject to A x <= b, x >= 0, with b >= 0
// (so the slack basis is feasible from the start). Bland's rule on both the
// entering and leaving choices rules out cycling; every pivot is exact
// rational arithmetic.
inline LpResult lp_maximize(const std::vector<std::vector<Rational>>& a,
                            const std::vector<Rational>& b,
                            const std::vector<Rational>& c) {
    const std::size_t m = a.size();
    const std::size_t n = c.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("lp_maximize: ragged constraint row");
    if (b.size() != m) throw std::invalid_argument("lp_maximize: rhs size mismatch");
    for (const auto& bi : b)
        if (bi < 0) throw std::invalid_argument("lp_maximize: requires b >= 0");

    // tableau: m rows of [A | I | b], cost row of reduced costs
    const std::size_t width = n + m + 1;
    std::vector<std::vector<Rational>> t(m, std::vector<Rational>(width, Rational(0)));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n + i] = 1;
        t[i][width - 1] = b[i];
    }
    std::vector<Rational> cost(width, Rational(0));
    for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
    Rational objective(0);
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    while (true) {
        std::size_t enter = width;
        for (std::size_t j = 0; j + 1 < width; ++j)
            if (cost[j] > 0) {
                enter = j;
                break;
            }
        if (enter == width) break;

        std::size_t leave = m;
        Rational best_ratio(0);
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            const Rational ratio = t[i][width - 1] / t[i][enter];
            if (leave == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m)
            throw std::runtime_error("lp_maximize: objective unbounded over the given rows");

        // pivot on (leave, enter)
        const Rational piv = t[leave][enter];
        for (std::size_t j = 0; j < width; ++j) t[leave][j] /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            const Rational f = t[i][enter];
            for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
        }
        const Rational cf = cost[enter];
        if (cf != 0) {
            for (std::size_t j = 0; j < width; ++j) cost[j] -= cf * t[leave][j];
            objective += cf * t[leave][width - 1];
        }
        basis[leave] = enter;
    }

    LpResult res;
    res.value = objective;
    res.solution.assign(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) res.solution[basis[i]] = t[i][width - 1];
    return res;
}

}  // namespace doflab
