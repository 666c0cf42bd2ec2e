#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "coopnet/errors.hpp"

namespace coopnet {

struct SimplexResult {
    double objective = 0.0;
    std::vector<double> solution;      // primal values, length n
    std::vector<double> reduced_cost;  // per column at the optimum, length n
};

/// Minimizes c.z subject to A z = b, z >= 0, starting from a given basis
/// whose columns form the identity (rows are expected pre-scaled so b >= 0
/// and basis column i has a 1 in row i only). Bland's smallest-index rule
/// for both the entering and leaving choice, so cycling cannot occur.
///
/// This is a plain dense tableau method: fine for the LP sizes here
/// (core feasibility over at most a few thousand coalition rows).
inline SimplexResult simplex_min(const std::vector<std::vector<double>>& a,
                                 const std::vector<double>& b, const std::vector<double>& c,
                                 std::vector<std::size_t> basis) {
    const std::size_t m = a.size();
    const std::size_t n = c.size();
    constexpr double eps = 1e-9;

    // tableau: m constraint rows + cost row, last column is RHS
    std::vector<std::vector<double>> t(m + 1, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n] = b[i];
    }
    for (std::size_t j = 0; j < n; ++j) t[m][j] = c[j];
    // price out the initial basis
    for (std::size_t i = 0; i < m; ++i) {
        const double cb = c[basis[i]];
        if (cb == 0.0) continue;
        for (std::size_t j = 0; j <= n; ++j) t[m][j] -= cb * t[i][j];
    }

    const std::size_t max_iters = 64 * (m + n) + 1024;
    for (std::size_t iter = 0;; ++iter) {
        if (iter > max_iters)
            throw InvariantViolation("simplex: iteration cap hit (" + std::to_string(max_iters) +
                                     ")");

        std::size_t enter = n;
        for (std::size_t j = 0; j < n; ++j)
            if (t[m][j] < -eps) {
                enter = j;
                break;  // Bland: first improving column
            }
        if (enter == n) break;  // optimal

        std::size_t leave = m;
        double best_ratio = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= eps) continue;
            const double ratio = t[i][n] / t[i][enter];
            if (leave == m || ratio < best_ratio - 1e-12 ||
                (ratio < best_ratio + 1e-12 && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m)
            throw InvariantViolation("simplex: unbounded direction in a bounded problem");

        // pivot on (leave, enter)
        const double piv = t[leave][enter];
        for (std::size_t j = 0; j <= n; ++j) t[leave][j] /= piv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const double f = t[i][enter];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= n; ++j) t[i][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }

    SimplexResult out;
    out.objective = -t[m][n];
    out.solution.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) out.solution[basis[i]] = t[i][n];
    out.reduced_cost.assign(t[m].begin(), t[m].begin() + n);
    return out;
}

}  // namespace coopnet
