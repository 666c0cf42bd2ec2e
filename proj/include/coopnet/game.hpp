#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coopnet/coalition.hpp"
#include "coopnet/errors.hpp"

namespace coopnet {

/// Transferable-utility game in characteristic function form: one real value
/// per nonempty coalition, v(empty) = 0. Values come from iterative solvers,
/// so negatives above -1e-9 are treated as rounding noise and clamped to 0.
class TuGame {
  public:
    TuGame(std::size_t k, std::vector<double> values_by_mask) : k_(k), v_(std::move(values_by_mask)) {
        if (k_ < 1 || k_ > kMaxPlayers)
            throw SchemaError("TuGame: player count " + std::to_string(k_) + " out of range");
        if (v_.size() != (std::size_t{1} << k_))
            throw SchemaError("TuGame: expected " + std::to_string((1u << k_) - 1) +
                              " coalition values, got " + std::to_string(v_.size() ? v_.size() - 1 : 0));
        v_[0] = 0.0;
        for (std::size_t s = 1; s < v_.size(); ++s) {
            if (!std::isfinite(v_[s]))
                throw SchemaError("TuGame: non-finite value for coalition " + std::to_string(s));
            if (v_[s] < 0.0 && v_[s] > -1e-9) v_[s] = 0.0;
        }
    }

    std::size_t num_players() const { return k_; }
    Coalition grand() const { return grand_coalition(k_); }
    double value(Coalition s) const { return v_[s]; }

    nlohmann::json to_json() const {
        nlohmann::json values = nlohmann::json::object();
        for (Coalition s = 1; s <= grand(); ++s) values[std::to_string(s)] = v_[s];
        return {{"K", k_}, {"values", values}};
    }

    static TuGame from_json(const nlohmann::json& j) {
        if (!j.contains("K") || !j.contains("values"))
            throw SchemaError("TU game document needs \"K\" and \"values\"");
        const std::size_t k = j.at("K").get<std::size_t>();
        if (k < 1 || k > kMaxPlayers)
            throw SchemaError("TU game: K out of range");
        std::vector<double> v(std::size_t{1} << k, std::nan(""));
        v[0] = 0.0;
        for (const auto& [key, val] : j.at("values").items()) {
            std::size_t mask = 0;
            try {
                mask = std::stoul(key);
            } catch (const std::exception&) {
                throw SchemaError("TU game: coalition key \"" + key + "\" is not a mask");
            }
            if (mask == 0 || mask >= v.size())
                throw SchemaError("TU game: coalition key \"" + key + "\" out of range");
            v[mask] = val.get<double>();
        }
        for (std::size_t s = 1; s < v.size(); ++s)
            if (std::isnan(v[s]))
                throw SchemaError("TU game: missing value for coalition " + std::to_string(s));
        return TuGame(k, std::move(v));
    }

  private:
    std::size_t k_;
    std::vector<double> v_;  // indexed by coalition mask; v_[0] == 0
};

/// Game where each coalition achieves one specific payoff vector (no side
/// payments); payoffs are listed by ascending member index.
class NtuPointGame {
  public:
    NtuPointGame(std::size_t k, std::vector<std::vector<double>> payoffs_by_mask)
        : k_(k), p_(std::move(payoffs_by_mask)) {
        if (k_ < 1 || k_ > kMaxPlayers)
            throw SchemaError("NtuPointGame: player count out of range");
        if (p_.size() != (std::size_t{1} << k_))
            throw SchemaError("NtuPointGame: payoff table has wrong size");
        for (std::size_t s = 1; s < p_.size(); ++s) {
            if (p_[s].size() != coalition_size(static_cast<Coalition>(s)))
                throw SchemaError("NtuPointGame: payoff length mismatch for coalition " +
                                  std::to_string(s));
            for (double r : p_[s])
                if (!std::isfinite(r) || r < 0.0)
                    throw SchemaError("NtuPointGame: payoffs must be finite and nonnegative");
        }
    }

    std::size_t num_players() const { return k_; }
    Coalition grand() const { return grand_coalition(k_); }

    const std::vector<double>& payoffs(Coalition s) const { return p_[s]; }

    /// Payoff of `player` inside coalition `s` (player must be a member).
    double payoff_of(Coalition s, std::size_t player) const {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < player; ++k)
            if (contains(s, k)) ++idx;
        return p_[s][idx];
    }

    nlohmann::json to_json() const {
        nlohmann::json payoffs = nlohmann::json::object();
        for (Coalition s = 1; s <= grand(); ++s) payoffs[std::to_string(s)] = p_[s];
        return {{"K", k_}, {"payoffs", payoffs}};
    }

    static NtuPointGame from_json(const nlohmann::json& j) {
        if (!j.contains("K") || !j.contains("payoffs"))
            throw SchemaError("NTU game document needs \"K\" and \"payoffs\"");
        const std::size_t k = j.at("K").get<std::size_t>();
        if (k < 1 || k > kMaxPlayers)
            throw SchemaError("NTU game: K out of range");
        std::vector<std::vector<double>> p(std::size_t{1} << k);
        std::vector<bool> seen(p.size(), false);
        seen[0] = true;
        for (const auto& [key, val] : j.at("payoffs").items()) {
            std::size_t mask = 0;
            try {
                mask = std::stoul(key);
            } catch (const std::exception&) {
                throw SchemaError("NTU game: coalition key \"" + key + "\" is not a mask");
            }
            if (mask == 0 || mask >= p.size())
                throw SchemaError("NTU game: coalition key \"" + key + "\" out of range");
            p[mask] = val.get<std::vector<double>>();
            seen[mask] = true;
        }
        for (std::size_t s = 1; s < p.size(); ++s)
            if (!seen[s])
                throw SchemaError("NTU game: missing payoffs for coalition " + std::to_string(s));
        return NtuPointGame(k, std::move(p));
    }

  private:
    std::size_t k_;
    std::vector<std::vector<double>> p_;
};

// ---------------------------------------------------------------------------
// TU-game predicates

struct SuperadditivityResult {
    bool holds = true;
    Coalition witness_a = 0;  // valid when !holds: v(a|b) < v(a)+v(b) - tol
    Coalition witness_b = 0;
};

/// Checks v(S1 u S2) >= v(S1) + v(S2) - 1e-9 over all disjoint nonempty pairs.
inline SuperadditivityResult is_superadditive(const TuGame& g) {
    const Coalition full = g.grand();
    for (Coalition a = 1; a <= full; ++a) {
        const Coalition rest = full & ~a;
        Coalition b = rest;
        for (; b != 0; b = (b - 1) & rest) {
            if (b < a) break;  // unordered pairs: visit each once
            if (g.value(a | b) < g.value(a) + g.value(b) - 1e-9)
                return {false, a, b};
        }
    }
    return {};
}

struct CohesivenessResult {
    bool holds = true;
    CoalitionStructure witness;  // partition beating the grand coalition
};

/// Checks v(K) >= sum of block values over every partition into >= 2 blocks.
/// Tolerance -1e-6: block values come out of iterative saddle solvers.
inline CohesivenessResult is_cohesive_tu(const TuGame& g) {
    const double vk = g.value(g.grand());
    CohesivenessResult out;
    for_each_partition(g.num_players(), [&](const CoalitionStructure& parts) {
        if (!out.holds || parts.size() < 2) return;
        double sum = 0.0;
        for (Coalition b : parts) sum += g.value(b);
        if (vk < sum - 1e-6) {
            out.holds = false;
            out.witness = parts;
        }
    });
    return out;
}

struct NtuStabilityResult {
    bool stable = true;
    Coalition blocking = 0;  // valid when !stable; smallest mask that blocks
};

/// The grand coalition of an NTU point game is stable when no proper
/// coalition strictly improves every one of its members (margin 1e-9).
inline NtuStabilityResult ntu_gc_stable(const NtuPointGame& g) {
    const Coalition full = g.grand();
    for (Coalition s = 1; s < full; ++s) {
        bool all_better = true;
        std::size_t idx = 0;
        for (std::size_t k = 0; k < g.num_players() && all_better; ++k) {
            if (!contains(s, k)) continue;
            if (g.payoffs(s)[idx] <= g.payoff_of(full, k) + 1e-9) all_better = false;
            ++idx;
        }
        if (all_better) return {false, s};
    }
    return {};
}

/// Stable coalition structures when each block splits its value equally.
/// A structure is unstable if some coalition D would give every member
/// strictly more than their current equal share (margin 1e-9); deviators'
/// value is v(D) regardless of how the others are arranged.
inline std::vector<CoalitionStructure> equal_split_stable_structures(const TuGame& g) {
    const std::size_t k = g.num_players();
    if (k > 8) throw KTooLarge("equal-split structure search supports up to 8 players");

    const Coalition full = g.grand();
    std::vector<double> share(full + 1, 0.0);  // equal split of v(D) per member
    for (Coalition d = 1; d <= full; ++d)
        share[d] = g.value(d) / static_cast<double>(coalition_size(d));

    std::vector<CoalitionStructure> stable;
    for_each_partition(k, [&](const CoalitionStructure& parts) {
        std::vector<double> current(k, 0.0);
        for (Coalition b : parts)
            for (std::size_t m : members(b)) current[m] = share[b];
        for (Coalition d = 1; d <= full; ++d) {
            bool all_better = true;
            for (std::size_t m = 0; m < k && all_better; ++m)
                if (contains(d, m) && share[d] <= current[m] + 1e-9) all_better = false;
            if (all_better) return;  // D breaks this structure
        }
        stable.push_back(parts);
    });
    return stable;
}

}  // namespace coopnet
