#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "coopnet/coalition.hpp"
#include "coopnet/errors.hpp"

namespace coopnet {

/// K interfering point-to-point links. gains[m][k] is the POWER gain from
/// transmitter k to receiver m (amplitude = sqrt of the entry).
struct InterferenceChannel {
    std::size_t K = 0;
    std::vector<std::vector<double>> gains;
    std::vector<double> powers;
    double noise_var = 1.0;
};

/// Symbol-synchronous CDMA uplink with a common power, equicorrelated
/// signatures (cross-correlation rho) and AMPLITUDE gains h_k.
struct CdmaMac {
    std::size_t K = 0;
    std::vector<double> h;
    double P = 1.0;
    double rho = 0.0;
    double sigma2 = 1.0;
};

/// Cluster of K users far from a common destination: every inter-user POWER
/// gain hu[m][k] (m != k) beats the direct gain hd[k] to the destination.
struct ClusteredMac {
    std::size_t K = 0;
    std::vector<double> hd;
    std::vector<std::vector<double>> hu;  // diagonal entries unused
    std::vector<double> powers;
};

using Scenario = std::variant<InterferenceChannel, CdmaMac, ClusteredMac>;

namespace detail {

inline double require_finite(const nlohmann::json& j, const std::string& field) {
    if (!j.is_number())
        throw SchemaError("field \"" + field + "\" must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v))
        throw InvariantViolation("field \"" + field + "\" must be finite");
    return v;
}

inline std::vector<double> require_vector(const nlohmann::json& j, const std::string& field,
                                          std::size_t n) {
    if (!j.is_array() || j.size() != n)
        throw SchemaError("field \"" + field + "\" must be an array of length " +
                          std::to_string(n));
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = require_finite(j.at(i), field + "[" + std::to_string(i) + "]");
    return out;
}

inline std::vector<std::vector<double>> require_matrix(const nlohmann::json& j,
                                                       const std::string& field, std::size_t n) {
    if (!j.is_array() || j.size() != n)
        throw SchemaError("field \"" + field + "\" must be a " + std::to_string(n) + "x" +
                          std::to_string(n) + " matrix");
    std::vector<std::vector<double>> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = require_vector(j.at(i), field + "[" + std::to_string(i) + "]", n);
    return out;
}

inline std::size_t require_count(const nlohmann::json& j) {
    if (!j.contains("K")) throw SchemaError("scenario document needs field \"K\"");
    if (!j.at("K").is_number_integer()) throw SchemaError("field \"K\" must be an integer");
    const long long k = j.at("K").get<long long>();
    if (k < 1 || k > static_cast<long long>(kMaxPlayers))
        throw InvariantViolation("field \"K\" must be in 1.." + std::to_string(kMaxPlayers));
    return static_cast<std::size_t>(k);
}

inline void check_nonnegative(const std::vector<double>& v, const std::string& field) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] < 0.0)
            throw InvariantViolation("field \"" + field + "[" + std::to_string(i) +
                                     "]\" must be >= 0");
}

inline void check_positive(const std::vector<double>& v, const std::string& field) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!(v[i] > 0.0))
            throw InvariantViolation("field \"" + field + "[" + std::to_string(i) +
                                     "]\" must be > 0");
}

}  // namespace detail

inline void validate(const InterferenceChannel& ic) {
    if (ic.gains.size() != ic.K)
        throw SchemaError("gains must be a " + std::to_string(ic.K) + "-row matrix");
    for (std::size_t m = 0; m < ic.K; ++m) {
        if (ic.gains[m].size() != ic.K)
            throw SchemaError("gains[" + std::to_string(m) + "] must have length " +
                              std::to_string(ic.K));
        detail::check_nonnegative(ic.gains[m], "gains[" + std::to_string(m) + "]");
        for (double g : ic.gains[m])
            if (!std::isfinite(g)) throw InvariantViolation("gains must be finite");
    }
    if (ic.powers.size() != ic.K) throw SchemaError("powers must have length K");
    detail::check_positive(ic.powers, "powers");
    if (!(ic.noise_var > 0.0) || !std::isfinite(ic.noise_var))
        throw InvariantViolation("field \"noise_var\" must be > 0");
}

inline void validate(const CdmaMac& c) {
    if (c.h.size() != c.K) throw SchemaError("h must have length K");
    detail::check_nonnegative(c.h, "h");
    if (!(c.P > 0.0) || !std::isfinite(c.P)) throw InvariantViolation("field \"P\" must be > 0");
    if (!(c.sigma2 > 0.0) || !std::isfinite(c.sigma2))
        throw InvariantViolation("field \"sigma2\" must be > 0");
    // equicorrelated R positive definite <=> rho in (-1/(K-1), 1)
    const double lo = c.K > 1 ? -1.0 / static_cast<double>(c.K - 1) : -1.0;
    if (!std::isfinite(c.rho) || c.rho >= 1.0 || c.rho <= lo)
        throw InvariantViolation("field \"rho\" must lie in (" + std::to_string(lo) +
                                 ", 1) for K=" + std::to_string(c.K));
}

inline void validate(const ClusteredMac& c) {
    if (c.hd.size() != c.K) throw SchemaError("hd must have length K");
    detail::check_nonnegative(c.hd, "hd");
    if (c.hu.size() != c.K) throw SchemaError("hu must be a KxK matrix");
    for (std::size_t m = 0; m < c.K; ++m) {
        if (c.hu[m].size() != c.K)
            throw SchemaError("hu[" + std::to_string(m) + "] must have length K");
        detail::check_nonnegative(c.hu[m], "hu[" + std::to_string(m) + "]");
    }
    if (c.powers.size() != c.K) throw SchemaError("powers must have length K");
    detail::check_positive(c.powers, "powers");
    for (std::size_t k = 0; k < c.K; ++k)
        for (std::size_t m = 0; m < c.K; ++m) {
            if (m == k) continue;
            if (!(c.hu[m][k] > c.hd[k]))
                throw InvariantViolation(
                    "clustered condition violated: hu[" + std::to_string(m) + "][" +
                    std::to_string(k) + "] = " + std::to_string(c.hu[m][k]) +
                    " must exceed hd[" + std::to_string(k) + "] = " + std::to_string(c.hd[k]));
        }
}

inline Scenario scenario_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("model"))
        throw SchemaError("scenario document needs field \"model\"");
    const std::string model = j.at("model").is_string() ? j.at("model").get<std::string>() : "";

    const std::size_t k = detail::require_count(j);
    if (model == "ic") {
        InterferenceChannel ic;
        ic.K = k;
        if (!j.contains("gains") || !j.contains("powers"))
            throw SchemaError("ic scenario needs \"gains\" and \"powers\"");
        ic.gains = detail::require_matrix(j.at("gains"), "gains", k);
        ic.powers = detail::require_vector(j.at("powers"), "powers", k);
        ic.noise_var = j.contains("noise_var")
                           ? detail::require_finite(j.at("noise_var"), "noise_var")
                           : 1.0;
        validate(ic);
        return ic;
    }
    if (model == "cdma") {
        CdmaMac c;
        c.K = k;
        for (const char* f : {"h", "P", "rho", "sigma2"})
            if (!j.contains(f))
                throw SchemaError(std::string("cdma scenario needs \"") + f + "\"");
        c.h = detail::require_vector(j.at("h"), "h", k);
        c.P = detail::require_finite(j.at("P"), "P");
        c.rho = detail::require_finite(j.at("rho"), "rho");
        c.sigma2 = detail::require_finite(j.at("sigma2"), "sigma2");
        validate(c);
        return c;
    }
    if (model == "clustered") {
        ClusteredMac c;
        c.K = k;
        for (const char* f : {"hd", "hu", "powers"})
            if (!j.contains(f))
                throw SchemaError(std::string("clustered scenario needs \"") + f + "\"");
        c.hd = detail::require_vector(j.at("hd"), "hd", k);
        c.hu = detail::require_matrix(j.at("hu"), "hu", k);
        c.powers = detail::require_vector(j.at("powers"), "powers", k);
        validate(c);
        return c;
    }
    throw SchemaError("unknown model \"" + model + "\" (expected ic, cdma or clustered)");
}

inline Scenario load_scenario(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("scenario is not valid JSON: ") + e.what());
    }
    return scenario_from_json(j);
}

inline nlohmann::json scenario_to_json(const Scenario& sc) {
    return std::visit(
        [](const auto& c) -> nlohmann::json {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, InterferenceChannel>) {
                return {{"model", "ic"},
                        {"K", c.K},
                        {"gains", c.gains},
                        {"powers", c.powers},
                        {"noise_var", c.noise_var}};
            } else if constexpr (std::is_same_v<T, CdmaMac>) {
                return {{"model", "cdma"}, {"K", c.K},     {"h", c.h},
                        {"P", c.P},        {"rho", c.rho}, {"sigma2", c.sigma2}};
            } else {
                return {{"model", "clustered"},
                        {"K", c.K},
                        {"hd", c.hd},
                        {"hu", c.hu},
                        {"powers", c.powers}};
            }
        },
        sc);
}

}  // namespace coopnet
