#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "coopnet/channel.hpp"
#include "coopnet/game.hpp"
#include "coopnet/matrix.hpp"
#include "coopnet/rx_coop.hpp"

namespace coopnet {

struct SaddleConfig {
    std::size_t max_iters = 5000;  // outer (jammer) iterations
    double step_init = 0.1;
    double tol = 1e-7;  // max-pass / min-pass value gap at termination
    std::size_t inner_iters = 200;
};

struct SaddleResult {
    double value_bits = 0.0;
    SymMat q_s;   // coalition transmit covariance
    SymMat q_sc;  // worst-case jammer covariance (empty when S is everyone)
    std::size_t iterations = 0;
    bool converged = false;
};

namespace detail {

/// K x |cols| amplitude matrix of the listed transmitters toward all K receivers.
inline Mat amplitude_matrix(const InterferenceChannel& ic, const std::vector<std::size_t>& cols) {
    Mat h(ic.K, cols.size());
    for (std::size_t m = 0; m < ic.K; ++m)
        for (std::size_t j = 0; j < cols.size(); ++j) h(m, j) = std::sqrt(ic.gains[m][cols[j]]);
    return h;
}

struct SaddleProblem {
    Mat hs, hj;  // amplitude blocks, jammer may have 0 columns
    std::vector<double> caps_s, caps_j;
    double noise_var = 1.0;
    std::size_t K = 0;

    SymMat received(const SymMat& qs, const SymMat& qj) const {
        SymMat m = SymMat::scaled_identity(K, noise_var);
        if (qj.dim() > 0) m = m + gram(hj, qj);
        return m + gram(hs, qs);
    }

    SymMat jam_floor(const SymMat& qj) const {
        SymMat n = SymMat::scaled_identity(K, noise_var);
        if (qj.dim() > 0) n = n + gram(hj, qj);
        return n;
    }

    // objective in nats: lndet(noise + jam + signal) - lndet(noise + jam)
    double objective(const SymMat& qs, const SymMat& qj) const {
        return logdet_pd(received(qs, qj)) - logdet_pd(jam_floor(qj));
    }

    SymMat grad_s(const SymMat& qs, const SymMat& qj) const {
        return gram(hs.transposed(), inverse_pd(received(qs, qj)));
    }

    SymMat grad_j(const SymMat& qs, const SymMat& qj) const {
        return gram(hj.transposed(), inverse_pd(received(qs, qj))) -
               gram(hj.transposed(), inverse_pd(jam_floor(qj)));
    }
};

/// Off-diagonal part of a gradient: a tangent direction that leaves the
/// capped diagonal alone. The cap projection rescales whole rows/columns,
/// which can cancel an off-diagonal gradient component at the power bound;
/// searching this direction separately restores progress there.
inline SymMat offdiag_part(const SymMat& g) {
    SymMat d(g.dim());
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = i + 1; j < g.dim(); ++j) d.set(i, j, g(i, j));
    return d;
}

/// Movement direction projected onto the tangent cone of the diagonal power
/// bounds: components that would push an already-capped diagonal entry
/// further out are dropped so the cap rescaling cannot cancel the step.
inline SymMat tangent_direction(const SymMat& dir, const SymMat& q, const std::vector<double>& caps) {
    SymMat d = dir;
    for (std::size_t i = 0; i < d.dim(); ++i)
        if (q(i, i) >= caps[i] * (1.0 - 1e-12) && d(i, i) > 0.0) d.set(i, i, 0.0);
    return d;
}

/// All feasible candidates reachable from q along +dir over a geometric
/// step ladder (the capped projection makes the map nonlinear, so the whole
/// ladder is scanned rather than backtracked).
inline void candidate_ladder(const SymMat& q, const SymMat& dir, const std::vector<double>& caps,
                             double step_top, std::vector<SymMat>& out) {
    double step = step_top;
    for (int halve = 0; halve < 48; ++halve, step *= 0.5)
        out.push_back(project_psd_capped(q + dir.scaled(step), caps));
}

struct AscentOutcome {
    double value = 0.0;       // objective reached, nats
    std::size_t iterations = 0;
    bool stationary = false;  // no candidate improved (vs budget exhausted)
};

/// Deterministic pseudo-random symmetric directions: the projection onto the
/// capped PSD set can null out gradient components on the cone boundary, so
/// the line scans also probe a few reproducible random directions.
inline std::vector<SymMat> probe_directions(std::size_t dim, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<SymMat> dirs;
    dirs.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        SymMat d(dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = i; j < dim; ++j) d.set(i, j, u(rng));
        dirs.push_back(std::move(d));
    }
    return dirs;
}

/// Coalition best response: projected gradient ascent with the jammer
/// frozen. Each iteration scans full step ladders along the gradient, its
/// off-diagonal part and its tangent-cone projection, taking the best
/// candidate found.
inline AscentOutcome maximize_coalition(const SaddleProblem& p, SymMat& qs, const SymMat& qj,
                                        const SaddleConfig& cfg, std::size_t budget,
                                        double min_gain = 0.0) {
    AscentOutcome out;
    out.value = p.objective(qs, qj);
    SymMat prev = qs;
    std::vector<SymMat> cands;
    for (; out.iterations < budget; ++out.iterations) {
        const SymMat g = p.grad_s(qs, qj);
        cands.clear();
        candidate_ladder(qs, g, p.caps_s, cfg.step_init * 16.0, cands);
        candidate_ladder(qs, offdiag_part(g), p.caps_s, cfg.step_init * 16.0, cands);
        candidate_ladder(qs, tangent_direction(g, qs, p.caps_s), p.caps_s, cfg.step_init * 16.0,
                         cands);
        if (out.iterations > 0)
            candidate_ladder(qs, qs - prev, p.caps_s, 64.0, cands);  // momentum extrapolation

        double best = out.value;
        const SymMat* best_q = nullptr;
        for (const SymMat& c : cands) {
            const double v = p.objective(c, qj);
            if (v > best) {
                best = v;
                best_q = &c;
            }
        }
        if (best_q == nullptr) {
            out.stationary = true;
            break;
        }
        const double gained = best - out.value;
        prev = qs;
        qs = *best_q;
        out.value = best;
        if (gained < std::max(min_gain, 1e-13 * (1.0 + std::abs(best)))) {
            out.stationary = true;  // progress below the requested resolution
            break;
        }
    }
    return out;
}

/// Jammer best response: projected gradient descent with the coalition
/// frozen, mirroring maximize_coalition. Used both to take descent steps
/// and to certify the lower half of the saddle sandwich.
inline AscentOutcome minimize_jammer(const SaddleProblem& p, const SymMat& qs, SymMat& qj,
                                     const SaddleConfig& cfg, std::size_t budget) {
    AscentOutcome out;
    out.value = p.objective(qs, qj);
    SymMat prev = qj;
    std::vector<SymMat> cands;
    for (; out.iterations < budget; ++out.iterations) {
        const SymMat g = p.grad_j(qs, qj).scaled(-1.0);  // descent direction
        cands.clear();
        candidate_ladder(qj, g, p.caps_j, cfg.step_init * 16.0, cands);
        candidate_ladder(qj, offdiag_part(g), p.caps_j, cfg.step_init * 16.0, cands);
        candidate_ladder(qj, tangent_direction(g, qj, p.caps_j), p.caps_j, cfg.step_init * 16.0,
                         cands);
        if (out.iterations > 0)
            candidate_ladder(qj, qj - prev, p.caps_j, 64.0, cands);  // momentum extrapolation

        double best = out.value;
        const SymMat* best_q = nullptr;
        for (const SymMat& c : cands) {
            const double v = p.objective(qs, c);
            if (v < best) {
                best = v;
                best_q = &c;
            }
        }
        if (best_q == nullptr) {
            out.stationary = true;
            break;
        }
        const double gained = out.value - best;
        prev = qj;
        qj = *best_q;
        out.value = best;
        if (gained < 1e-13 * (1.0 + std::abs(best))) {
            out.stationary = true;
            break;
        }
    }
    return out;
}

}  // namespace detail

/// Worst-case value of a transmitter coalition: the coalition picks a joint
/// covariance, the outsiders jam, and the achievable sum rate is the
/// concave-convex log-det ratio of Gaussian signaling. The coalition side is
/// an inner projected-gradient ascent (exact best response); the jammer
/// descends on the best-response value — a candidate jammer move is kept
/// only if the coalition's re-maximized value actually drops. Terminates
/// when no jammer move helps or the max-pass/min-pass gap falls below tol.
inline SaddleResult value_tx_jamming(const InterferenceChannel& ic, Coalition s,
                                     const SaddleConfig& cfg = {}) {
    if (s == 0) throw InvariantViolation("value_tx_jamming: empty coalition");
    if (s > grand_coalition(ic.K))
        throw InvariantViolation("value_tx_jamming: coalition outside the channel");

    const std::vector<std::size_t> in = members(s);
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < ic.K; ++j)
        if (!contains(s, j)) out.push_back(j);

    detail::SaddleProblem p;
    p.K = ic.K;
    p.noise_var = ic.noise_var;
    p.hs = detail::amplitude_matrix(ic, in);
    p.hj = detail::amplitude_matrix(ic, out);
    for (std::size_t k : in) p.caps_s.push_back(ic.powers[k]);
    for (std::size_t j : out) p.caps_j.push_back(ic.powers[j]);

    SymMat qs = SymMat::diagonal(p.caps_s);  // full-power diagonal starts
    SymMat qj = SymMat::diagonal(p.caps_j);

    SaddleResult res;

    if (out.empty()) {
        // pure maximization: run ascent to the configured value resolution,
        // then probe random feasible directions to rule out a spurious stall
        // at the feasible-cone boundary; repeat until the probes also fail
        std::size_t total_iters = 0;
        bool converged = false;
        double value = p.objective(qs, qj);
        for (int escape = 0; escape < 8 && total_iters < cfg.max_iters; ++escape) {
            const detail::AscentOutcome a = detail::maximize_coalition(
                p, qs, qj, cfg, cfg.max_iters - total_iters, cfg.tol);
            total_iters += a.iterations + 1;
            value = a.value;
            if (!a.stationary) break;  // budget exhausted
            const std::vector<SymMat> probes =
                detail::probe_directions(qs.dim(), 4, 0x5deece66dULL + std::uint64_t(escape));
            std::vector<SymMat> cands;
            for (const SymMat& pr : probes) {
                detail::candidate_ladder(qs, pr, p.caps_s, cfg.step_init, cands);
                detail::candidate_ladder(qs, pr.scaled(-1.0), p.caps_s, cfg.step_init, cands);
            }
            double best = value;
            const SymMat* best_q = nullptr;
            for (const SymMat& c : cands) {
                const double v = p.objective(c, qj);
                if (v > best) {
                    best = v;
                    best_q = &c;
                }
            }
            if (best_q == nullptr || best - value < cfg.tol) {
                converged = true;  // stationary within tol even under probing
                break;
            }
            qs = *best_q;
            value = best;
        }
        res.value_bits = bits(value);
        res.q_s = qs;
        res.q_sc = qj;
        res.iterations = total_iters;
        res.converged = converged;
        return res;
    }

    // v_up = value of the coalition's best response to the current jammer
    // (an upper bound on the game value); v_low = value of the jammer's best
    // response to the current coalition point (a lower bound). The pair is a
    // tol-saddle exactly when the sandwich closes.
    double v_up = detail::maximize_coalition(p, qs, qj, cfg, cfg.inner_iters).value;
    SymMat qj_br = qj;
    double v_low = detail::minimize_jammer(p, qs, qj_br, cfg, cfg.inner_iters).value;

    std::size_t outer = 0;
    bool converged = false;
    std::vector<SymMat> cands;
    for (; outer < cfg.max_iters; ++outer) {
        if (v_up - v_low < cfg.tol) {
            converged = true;
            break;
        }

        // candidate jammer moves: gradient ladders plus the segment toward
        // the jammer's best response (which the ladder hits exactly at full
        // length), ranked by how far they push the coalition's value down
        const SymMat g = p.grad_j(qs, qj).scaled(-1.0);
        cands.clear();
        detail::candidate_ladder(qj, g, p.caps_j, cfg.step_init * 16.0, cands);
        detail::candidate_ladder(qj, detail::offdiag_part(g), p.caps_j, cfg.step_init * 16.0,
                                 cands);
        detail::candidate_ladder(qj, detail::tangent_direction(g, qj, p.caps_j), p.caps_j,
                                 cfg.step_init * 16.0, cands);
        detail::candidate_ladder(qj, qj_br - qj, p.caps_j, 16.0, cands);

        std::vector<std::pair<double, std::size_t>> ranked;
        ranked.reserve(cands.size());
        for (std::size_t i = 0; i < cands.size(); ++i)
            ranked.emplace_back(p.objective(qs, cands[i]), i);
        std::sort(ranked.begin(), ranked.end());

        // keep the first candidate (deepest drop first) that still lowers
        // the coalition's re-maximized value: a certified descent step on
        // the worst-case objective
        bool moved = false;
        for (const auto& [drop, idx] : ranked) {
            if (drop >= v_up) break;  // nothing below the current value at all
            SymMat qs_trial = qs;
            const double reply =
                detail::maximize_coalition(p, qs_trial, cands[idx], cfg, cfg.inner_iters).value;
            if (reply < v_up) {
                qj = cands[idx];
                qs = qs_trial;
                v_up = reply;
                moved = true;
                break;
            }
        }
        if (!moved) break;  // stalled: sandwich still open, flag as such

        qj_br = qj;
        v_low = detail::minimize_jammer(p, qs, qj_br, cfg, cfg.inner_iters).value;
    }

    res.value_bits = bits(v_up);
    res.q_s = qs;
    res.q_sc = qj;
    res.iterations = outer;
    res.converged = converged;
    return res;
}

/// Sum rate of coalition S when every transmitter, inside and outside S,
/// sends an independent full-power white signal: the non-cooperative
/// operating point, evaluated in closed form. Serves as the no-beamforming
/// benchmark against which the covariance-optimized values are compared.
inline double value_full_power_baseline(const InterferenceChannel& ic, Coalition s) {
    if (s == 0) throw InvariantViolation("value_full_power_baseline: empty coalition");
    if (s > grand_coalition(ic.K))
        throw InvariantViolation("value_full_power_baseline: coalition outside the channel");
    const std::vector<std::size_t> in = members(s);
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < ic.K; ++j)
        if (!contains(s, j)) out.push_back(j);
    detail::SaddleProblem p;
    p.K = ic.K;
    p.noise_var = ic.noise_var;
    p.hs = detail::amplitude_matrix(ic, in);
    p.hj = detail::amplitude_matrix(ic, out);
    for (std::size_t k : in) p.caps_s.push_back(ic.powers[k]);
    for (std::size_t j : out) p.caps_j.push_back(ic.powers[j]);
    return bits(p.objective(SymMat::diagonal(p.caps_s), SymMat::diagonal(p.caps_j)));
}

struct TxGameResult {
    TuGame game;
    std::vector<SaddleResult> details;  // indexed by coalition mask, [0] unused
    bool all_converged = true;
};

/// TU game of perfect transmitter cooperation under worst-case jamming.
inline TxGameResult tx_game(const InterferenceChannel& ic, const SaddleConfig& cfg = {}) {
    if (ic.K > 8) throw KTooLarge("tx_game: 2^K saddle solves capped at K = 8");
    const Coalition full = grand_coalition(ic.K);
    std::vector<double> v(std::size_t{1} << ic.K, 0.0);
    std::vector<SaddleResult> details(std::size_t{1} << ic.K);
    bool ok = true;
    for (Coalition s = 1; s <= full; ++s) {
        details[s] = value_tx_jamming(ic, s, cfg);
        v[s] = details[s].value_bits;
        ok = ok && details[s].converged;
    }
    return {TuGame(ic.K, std::move(v)), std::move(details), ok};
}

}  // namespace coopnet
