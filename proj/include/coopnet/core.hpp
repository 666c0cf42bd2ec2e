#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coopnet/game.hpp"
#include "coopnet/simplex.hpp"

namespace coopnet {

/// A weighted family of coalitions proving core emptiness: the weights
/// satisfy sum over {S containing k} of beta_S <= 1 for every player k,
/// yet sum of beta_S * v(S) exceeds v(grand). No nonnegative payoff profile
/// can honor all coalition claims at once.
struct BalancedFamilyViolation {
    std::vector<std::pair<Coalition, double>> weights;  // (S, beta_S), beta_S > 0
    double family_value = 0.0;                          // sum beta_S * v(S)
    double grand_value = 0.0;
};

enum class CoreStatus { NonEmpty, Empty };

struct CoreResult {
    CoreStatus status = CoreStatus::NonEmpty;
    std::optional<std::vector<double>> witness_point;            // when NonEmpty
    std::optional<BalancedFamilyViolation> certificate;          // when Empty
};

/// Decides core nonemptiness of a TU game by Phase-I LP feasibility of
///   sum_{k in S} x_k >= v(S) for every proper nonempty S,
///   sum_k x_k = v(K),  x >= 0.
/// NonEmpty when the minimum total artificial slack is <= 1e-8. When the
/// system is infeasible, the Phase-I duals are folded into a balanced-family
/// certificate (see BalancedFamilyViolation).
inline CoreResult core_feasible(const TuGame& g) {
    const std::size_t k = g.num_players();
    const Coalition full = g.grand();
    const double vk = g.value(full);
    if (vk < 0.0)
        throw DegenerateGame("core_feasible: grand coalition value is negative (" +
                             std::to_string(vk) + ")");

    // rows: one per proper nonempty coalition, then the grand equality
    const std::size_t n_ineq = static_cast<std::size_t>(full) - 1;
    const std::size_t m = n_ineq + 1;
    const std::size_t n_x = k;
    const std::size_t n_s = n_ineq;              // surplus per inequality
    const std::size_t n = n_x + n_s + m;         // + one artificial per row
    const std::size_t art0 = n_x + n_s;

    std::vector<std::vector<double>> a(m, std::vector<double>(n, 0.0));
    std::vector<double> b(m, 0.0);
    std::vector<double> cost(n, 0.0);
    std::vector<std::size_t> basis(m);
    std::vector<double> row_sign(m, 1.0);  // -1 where the row was negated for b >= 0

    for (Coalition s = 1; s < full; ++s) {
        const std::size_t row = static_cast<std::size_t>(s) - 1;
        const double sign = g.value(s) >= 0.0 ? 1.0 : -1.0;
        row_sign[row] = sign;
        for (std::size_t p = 0; p < k; ++p)
            if (contains(s, p)) a[row][p] = sign;
        a[row][n_x + row] = -sign;  // surplus: sum_{k in S} x_k - s_S = v(S)
        a[row][art0 + row] = 1.0;
        b[row] = sign * g.value(s);
        basis[row] = art0 + row;
    }
    const std::size_t eq_row = m - 1;
    for (std::size_t p = 0; p < k; ++p) a[eq_row][p] = 1.0;
    a[eq_row][art0 + eq_row] = 1.0;
    b[eq_row] = vk;  // >= 0 by the degeneracy guard
    basis[eq_row] = art0 + eq_row;

    for (std::size_t j = art0; j < n; ++j) cost[j] = 1.0;

    const SimplexResult lp = simplex_min(a, b, cost, std::move(basis));

    CoreResult out;
    if (lp.objective <= 1e-8) {
        out.status = CoreStatus::NonEmpty;
        std::vector<double> x(lp.solution.begin(), lp.solution.begin() + k);
        for (double& xi : x)
            if (xi < 0.0 && xi > -1e-9) xi = 0.0;
        out.witness_point = std::move(x);
        return out;
    }

    out.status = CoreStatus::Empty;

    // Phase-I duals: y_row = 1 - reduced_cost(artificial_row), flipped back
    // to the original row orientation. For an infeasible system y_eq < 0;
    // lambda = -y_eq scales the inequality duals into balanced weights.
    const double y_eq = 1.0 - lp.reduced_cost[art0 + eq_row];
    const double lambda = -y_eq;
    if (lambda > 1e-12) {
        BalancedFamilyViolation cert;
        cert.grand_value = vk;
        for (Coalition s = 1; s < full; ++s) {
            const std::size_t row = static_cast<std::size_t>(s) - 1;
            const double y = row_sign[row] * (1.0 - lp.reduced_cost[art0 + row]);
            const double beta = y / lambda;
            if (beta > 1e-10) {
                cert.weights.emplace_back(s, beta);
                cert.family_value += beta * g.value(s);
            }
        }
        out.certificate = std::move(cert);
    }
    return out;
}

}  // namespace coopnet
