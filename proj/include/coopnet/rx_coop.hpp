#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "coopnet/channel.hpp"
#include "coopnet/game.hpp"
#include "coopnet/matrix.hpp"

namespace coopnet {

inline double bits(double nats) { return nats / std::numbers::ln2; }

namespace detail {

/// Amplitude column of transmitter j seen by the receivers listed in `rx`.
inline std::vector<double> amplitude_column(const InterferenceChannel& ic,
                                            const std::vector<std::size_t>& rx, std::size_t j) {
    std::vector<double> a(rx.size());
    for (std::size_t i = 0; i < rx.size(); ++i) a[i] = std::sqrt(ic.gains[rx[i]][j]);
    return a;
}

inline void add_rank_one(SymMat& m, const std::vector<double>& a, double scale) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i; j < a.size(); ++j) m.add(i, j, scale * a[i] * a[j]);
}

}  // namespace detail

/// Sum rate of the links in S when their receivers decode jointly, with
/// everything outside S treated as Gaussian interference:
///   log2 det(I + N^-1 H_S P_S H_S^T),  N = noise + outside interference.
inline double value_joint_decoding(const InterferenceChannel& ic, Coalition s) {
    if (s == 0) throw InvariantViolation("value_joint_decoding: empty coalition");
    const std::vector<std::size_t> rx = members(s);
    const std::size_t n = rx.size();

    SymMat noise = SymMat::scaled_identity(n, ic.noise_var);
    for (std::size_t j = 0; j < ic.K; ++j)
        if (!contains(s, j))
            detail::add_rank_one(noise, detail::amplitude_column(ic, rx, j), ic.powers[j]);

    SymMat total = noise;
    for (std::size_t j : rx)
        detail::add_rank_one(total, detail::amplitude_column(ic, rx, j), ic.powers[j]);

    return bits(logdet_pd(total) - logdet_pd(noise));
}

/// Successive-decoding corner point of the all-receivers MAC region: users
/// are peeled off in `order`, each seeing only later-decoded users as
/// interference. The rates telescope to the grand coalition value.
inline std::vector<double> mac_corner_point(const InterferenceChannel& ic,
                                            const std::vector<std::size_t>& order) {
    const std::size_t k = ic.K;
    {
        std::vector<bool> seen(k, false);
        if (order.size() != k) throw InvariantViolation("mac_corner_point: order must list all links");
        for (std::size_t p : order) {
            if (p >= k || seen[p])
                throw InvariantViolation("mac_corner_point: order is not a permutation");
            seen[p] = true;
        }
    }

    std::vector<std::size_t> all_rx(k);
    for (std::size_t i = 0; i < k; ++i) all_rx[i] = i;

    std::vector<double> rates(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        SymMat noise = SymMat::scaled_identity(k, ic.noise_var);
        for (std::size_t j = i + 1; j < k; ++j)
            detail::add_rank_one(noise, detail::amplitude_column(ic, all_rx, order[j]),
                                 ic.powers[order[j]]);
        SymMat total = noise;
        detail::add_rank_one(total, detail::amplitude_column(ic, all_rx, order[i]),
                             ic.powers[order[i]]);
        rates[order[i]] = bits(logdet_pd(total) - logdet_pd(noise));
    }
    return rates;
}

/// TU game of the joint-decoding receiver cooperation model.
inline TuGame rx_joint_game(const InterferenceChannel& ic) {
    if (ic.K > 12) throw KTooLarge("rx_joint_game: table construction capped at K = 12");
    std::vector<double> v(std::size_t{1} << ic.K, 0.0);
    for (Coalition s = 1; s <= grand_coalition(ic.K); ++s) v[s] = value_joint_decoding(ic, s);
    return TuGame(ic.K, std::move(v));
}

/// Scalar-receiver cooperation game: members of S are decoded jointly at one
/// receiver while outsiders interfere, v(S) = log2(1 + sum_S snr / (1 + sum_rest snr)).
inline TuGame single_receiver_mac_game(const std::vector<double>& snrs) {
    const std::size_t k = snrs.size();
    if (k < 1 || k > kMaxPlayers)
        throw InvariantViolation("single_receiver_mac_game: need 1.." +
                                 std::to_string(kMaxPlayers) + " users");
    for (double s : snrs)
        if (!(s > 0.0) || !std::isfinite(s))
            throw InvariantViolation("single_receiver_mac_game: SNRs must be positive");

    std::vector<double> v(std::size_t{1} << k, 0.0);
    for (Coalition s = 1; s <= grand_coalition(k); ++s) {
        double inside = 0.0, outside = 0.0;
        for (std::size_t j = 0; j < k; ++j) (contains(s, j) ? inside : outside) += snrs[j];
        v[s] = std::log2(1.0 + inside / (1.0 + outside));
    }
    return TuGame(k, std::move(v));
}

// ---------------------------------------------------------------------------
// Linear multiuser detection payoffs (CDMA uplink)

enum class Detector { MMSE, Decorrelator };

inline Detector detector_from_string(const std::string& name) {
    if (name == "mmse") return Detector::MMSE;
    if (name == "decorrelator") return Detector::Decorrelator;
    throw InvalidDecoder("unknown detector \"" + name + "\" (expected mmse or decorrelator)");
}

namespace detail {

/// Equicorrelated signature correlation matrix restricted to S.
inline SymMat correlation_matrix(double rho, std::size_t n) {
    SymMat r = SymMat::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) r.set(i, j, rho);
    return r;
}

/// SINR of member k under an arbitrary linear front end L applied to the
/// coalition's matched-filter output: desired power [(LR)_kk]^2 h_k^2 P
/// against its own noise, outside interference (through rho), and residual
/// inside interference.
inline double sinr_linear_mud(const CdmaMac& c, Coalition s, std::size_t k, const SymMat& l,
                              const SymMat& r) {
    const std::vector<std::size_t> ms = members(s);
    const std::size_t n = ms.size();
    std::size_t idx = n;
    for (std::size_t i = 0; i < n; ++i)
        if (ms[i] == k) idx = i;
    if (idx == n) throw InvariantViolation("sinr: link " + std::to_string(k) + " not in coalition");

    const Mat lr = l.as_mat() * r.as_mat();
    const Mat lrl = lr * l.as_mat();
    std::vector<double> le(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) le[i] += l(i, j);

    double outside = 0.0;
    for (std::size_t j = 0; j < c.K; ++j)
        if (!contains(s, j)) outside += c.h[j] * c.h[j] * c.P;

    const double num = lr(idx, idx) * lr(idx, idx) * c.h[k] * c.h[k] * c.P;
    double den = c.sigma2 * lrl(idx, idx) + c.rho * c.rho * le[idx] * le[idx] * outside;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == idx) continue;
        den += lr(idx, j) * lr(idx, j) * c.h[ms[j]] * c.h[ms[j]] * c.P;
    }
    return num / den;
}

}  // namespace detail

/// MMSE detector SINR of link k inside coalition S; the front end is
/// L = (R + sigma^2 A^-2)^-1 with A the diagonal of received amplitudes.
inline double sinr_mmse(const CdmaMac& c, Coalition s, std::size_t k) {
    const std::vector<std::size_t> ms = members(s);
    const std::size_t n = ms.size();
    const SymMat r = detail::correlation_matrix(c.rho, n);
    SymMat m = r;
    for (std::size_t i = 0; i < n; ++i) {
        const double amp2 = c.h[ms[i]] * c.h[ms[i]] * c.P;
        m.add(i, i, c.sigma2 / amp2);
    }
    return detail::sinr_linear_mud(c, s, k, inverse_pd(m), r);
}

/// Decorrelating detector SINR of link k inside coalition S, closed form.
inline double sinr_decorrelator(const CdmaMac& c, Coalition s, std::size_t k) {
    if (!contains(s, k))
        throw InvariantViolation("sinr_decorrelator: link not in coalition");
    const double n = static_cast<double>(coalition_size(s));
    const double rho = c.rho;
    const double denom_edge = 1.0 + rho * (n - 1.0);
    if (std::abs(1.0 - rho) < 1e-12 || std::abs(denom_edge) < 1e-12)
        throw RhoOutOfRange("sinr_decorrelator: correlation matrix singular for |S| = " +
                            std::to_string(static_cast<std::size_t>(n)));

    double outside = 0.0;
    for (std::size_t j = 0; j < c.K; ++j)
        if (!contains(s, j)) outside += c.h[j] * c.h[j] * c.P;

    const double noise_term = c.sigma2 / (1.0 - rho) * (1.0 + rho * (n - 2.0)) / denom_edge;
    const double leak = rho / denom_edge;
    return c.h[k] * c.h[k] * c.P / (noise_term + leak * leak * outside);
}

/// NTU payoff table of the multiuser-detection game, rates log2(1 + SINR).
inline NtuPointGame mud_game(const CdmaMac& c, Detector det) {
    if (c.K > 12) throw KTooLarge("mud_game: table construction capped at K = 12");
    std::vector<std::vector<double>> pay(std::size_t{1} << c.K);
    for (Coalition s = 1; s <= grand_coalition(c.K); ++s)
        for (std::size_t k : members(s)) {
            const double g = det == Detector::MMSE ? sinr_mmse(c, s, k)
                                                   : sinr_decorrelator(c, s, k);
            pay[s].push_back(std::log2(1.0 + g));
        }
    return NtuPointGame(c.K, std::move(pay));
}

}  // namespace coopnet
