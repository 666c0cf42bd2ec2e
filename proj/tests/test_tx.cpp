#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "coopnet/core.hpp"
#include "coopnet/tx_perfect.hpp"

using namespace coopnet;

namespace {

InterferenceChannel random_ic(std::mt19937_64& rng, std::size_t k) {
    std::uniform_real_distribution<double> gain(0.0, 1.0);
    std::uniform_real_distribution<double> power(0.5, 2.0);
    InterferenceChannel ic;
    ic.K = k;
    ic.gains.assign(k, std::vector<double>(k, 0.0));
    ic.powers.resize(k);
    for (std::size_t m = 0; m < k; ++m)
        for (std::size_t j = 0; j < k; ++j) ic.gains[m][j] = gain(rng);
    for (std::size_t j = 0; j < k; ++j) ic.powers[j] = power(rng);
    return ic;
}

SymMat random_feasible(std::mt19937_64& rng, const std::vector<double>& caps) {
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    SymMat q(caps.size());
    for (std::size_t i = 0; i < caps.size(); ++i) {
        for (std::size_t j = i + 1; j < caps.size(); ++j) q.set(i, j, u(rng) * 0.2);
        q.set(i, i, caps[i] * (0.3 + 0.4 * (u(rng) + 0.5)));
    }
    return project_psd_capped(q, caps);
}

double frobenius_inner(const SymMat& a, const SymMat& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) s += a(i, j) * b(i, j);
    return s;
}

}  // namespace

TEST_CASE("jamming value on trivial channels") {
    SECTION("one isolated link, full power") {
        InterferenceChannel ic{1, {{1.0}}, {1.0}, 1.0};
        const SaddleResult r = value_tx_jamming(ic, 1);
        CHECK(r.converged);
        CHECK(r.value_bits == Catch::Approx(1.0).margin(1e-6));
        CHECK(r.q_s(0, 0) == Catch::Approx(1.0).margin(1e-9));
    }

    SECTION("grand coalition over parallel channels decouples") {
        InterferenceChannel ic{3,
                               {{0.9, 0.0, 0.0}, {0.0, 0.5, 0.0}, {0.0, 0.0, 1.7}},
                               {1.0, 2.0, 0.5},
                               1.0};
        const SaddleResult r = value_tx_jamming(ic, 0b111);
        const double expect = std::log2(1.0 + 0.9) + std::log2(1.0 + 0.5 * 2.0) +
                              std::log2(1.0 + 1.7 * 0.5);
        CHECK(r.converged);
        CHECK(r.value_bits == Catch::Approx(expect).margin(1e-6));
    }

    SECTION("empty or out-of-range coalitions are rejected") {
        InterferenceChannel ic{1, {{1.0}}, {1.0}, 1.0};
        CHECK_THROWS_AS(value_tx_jamming(ic, 0), InvariantViolation);
        CHECK_THROWS_AS(value_tx_jamming(ic, 2), InvariantViolation);
    }
}

TEST_CASE("split gram identity for conformable blocks") {
    std::mt19937_64 rng(307);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        Mat a(4, 5);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 5; ++j) a(i, j) = u(rng);
        Mat a1(4, 2), a2(4, 3);
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 2; ++j) a1(i, j) = a(i, j);
            for (std::size_t j = 0; j < 3; ++j) a2(i, j) = a(i, 2 + j);
        }
        SymMat q(5), q1(2), q2(3);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = i; j < 2; ++j) {
                const double v = u(rng);
                q1.set(i, j, v);
                q.set(i, j, v);
            }
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i; j < 3; ++j) {
                const double v = u(rng);
                q2.set(i, j, v);
                q.set(2 + i, 2 + j, v);
            }
        const SymMat whole = gram(a, q);
        const SymMat split = gram(a1, q1) + gram(a2, q2);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                CHECK(whole(i, j) == Catch::Approx(split(i, j)).margin(1e-12));
    }
}

TEST_CASE("analytic gradients match central differences") {
    std::mt19937_64 rng(311);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        const InterferenceChannel ic = random_ic(rng, 3);
        detail::SaddleProblem p;
        p.K = 3;
        p.noise_var = ic.noise_var;
        p.hs = detail::amplitude_matrix(ic, {0, 1});
        p.hj = detail::amplitude_matrix(ic, {2});
        p.caps_s = {ic.powers[0], ic.powers[1]};
        p.caps_j = {ic.powers[2]};

        const SymMat qs = random_feasible(rng, p.caps_s);
        const SymMat qj = random_feasible(rng, p.caps_j);

        SymMat dir_s(2), dir_j(1);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = i; j < 2; ++j) dir_s.set(i, j, u(rng));
        dir_j.set(0, 0, u(rng));

        const double h = 1e-5;
        const double fd_s = (p.objective(qs + dir_s.scaled(h), qj) -
                             p.objective(qs + dir_s.scaled(-h), qj)) /
                            (2.0 * h);
        const double an_s = frobenius_inner(p.grad_s(qs, qj), dir_s);
        CHECK(an_s == Catch::Approx(fd_s).epsilon(1e-5).margin(1e-9));

        const double fd_j = (p.objective(qs, qj + dir_j.scaled(h)) -
                             p.objective(qs, qj + dir_j.scaled(-h))) /
                            (2.0 * h);
        const double an_j = frobenius_inner(p.grad_j(qs, qj), dir_j);
        CHECK(an_j == Catch::Approx(fd_j).epsilon(1e-5).margin(1e-9));
    }
}

TEST_CASE("two-link saddle value matches a dense grid oracle") {
    std::mt19937_64 rng(313);
    for (int trial = 0; trial < 3; ++trial) {
        const InterferenceChannel ic = random_ic(rng, 2);
        detail::SaddleProblem p;
        p.K = 2;
        p.noise_var = ic.noise_var;
        p.hs = detail::amplitude_matrix(ic, {0});
        p.hj = detail::amplitude_matrix(ic, {1});
        p.caps_s = {ic.powers[0]};
        p.caps_j = {ic.powers[1]};

        // scalar blocks: exhaustive 200x200 min-max over the two power axes
        double oracle = std::numeric_limits<double>::infinity();
        for (int jj = 0; jj < 200; ++jj) {
            const double q2 = ic.powers[1] * jj / 199.0;
            SymMat qj(1);
            qj.set(0, 0, q2);
            double best = 0.0;
            for (int ii = 0; ii < 200; ++ii) {
                const double q1 = ic.powers[0] * ii / 199.0;
                SymMat qs(1);
                qs.set(0, 0, q1);
                best = std::max(best, p.objective(qs, qj));
            }
            oracle = std::min(oracle, best);
        }

        const SaddleResult r = value_tx_jamming(ic, 0b01);
        CHECK(r.converged);
        CHECK(r.value_bits == Catch::Approx(bits(oracle)).margin(1e-3));
    }
}

TEST_CASE("returned point behaves like a saddle") {
    std::mt19937_64 rng(317);
    SaddleConfig cfg;
    cfg.tol = 1e-5;
    for (int trial = 0; trial < 4; ++trial) {
        const InterferenceChannel ic = random_ic(rng, 3);
        const Coalition s = 1 + static_cast<Coalition>(rng() % 6);  // proper nonempty
        const SaddleResult r = value_tx_jamming(ic, s, cfg);
        REQUIRE(r.converged);

        detail::SaddleProblem p;
        p.K = 3;
        p.noise_var = ic.noise_var;
        std::vector<std::size_t> in = members(s), out;
        for (std::size_t j = 0; j < 3; ++j)
            if (!contains(s, j)) out.push_back(j);
        p.hs = detail::amplitude_matrix(ic, in);
        p.hj = detail::amplitude_matrix(ic, out);
        for (std::size_t k : in) p.caps_s.push_back(ic.powers[k]);
        for (std::size_t j : out) p.caps_j.push_back(ic.powers[j]);

        const double at_saddle = p.objective(r.q_s, r.q_sc);
        std::uniform_real_distribution<double> u(-0.3, 0.3);
        for (int probe = 0; probe < 8; ++probe) {
            SymMat ds(r.q_s.dim()), dj(r.q_sc.dim());
            for (std::size_t i = 0; i < ds.dim(); ++i)
                for (std::size_t j = i; j < ds.dim(); ++j) ds.set(i, j, u(rng));
            for (std::size_t i = 0; i < dj.dim(); ++i)
                for (std::size_t j = i; j < dj.dim(); ++j) dj.set(i, j, u(rng));

            const SymMat qs_alt = project_psd_capped(r.q_s + ds, p.caps_s);
            CHECK(p.objective(qs_alt, r.q_sc) <= at_saddle + cfg.tol);

            const SymMat qj_alt = project_psd_capped(r.q_sc + dj, p.caps_j);
            CHECK(p.objective(r.q_s, qj_alt) >= at_saddle - cfg.tol);
        }
    }
}

TEST_CASE("raising a jammer power cap never helps the coalition") {
    std::mt19937_64 rng(331);
    for (int trial = 0; trial < 5; ++trial) {
        InterferenceChannel ic = random_ic(rng, 2);
        const double base = value_tx_jamming(ic, 0b01).value_bits;
        ic.powers[1] *= 2.0;
        const double jammed_harder = value_tx_jamming(ic, 0b01).value_bits;
        CHECK(jammed_harder <= base + 1e-6);
    }
}

TEST_CASE("transmitter cooperation game") {
    SECTION("one link") {
        InterferenceChannel ic{1, {{0.6}}, {2.0}, 1.0};
        const TxGameResult r = tx_game(ic);
        CHECK(r.all_converged);
        CHECK(r.game.value(1) == Catch::Approx(std::log2(1.0 + 1.2)).margin(1e-6));
    }

    SECTION("table matches per-coalition solves") {
        std::mt19937_64 rng(337);
        const InterferenceChannel ic = random_ic(rng, 2);
        const TxGameResult r = tx_game(ic);
        for (Coalition s = 1; s <= 3; ++s)
            CHECK(r.game.value(s) == Catch::Approx(value_tx_jamming(ic, s).value_bits).margin(1e-9));
        CHECK(r.details[3].q_sc.dim() == 0);  // grand coalition has no jammer
    }

    SECTION("random three-link games are cohesive") {
        std::mt19937_64 rng(347);
        for (int trial = 0; trial < 3; ++trial) {
            const TxGameResult r = tx_game(random_ic(rng, 3));
            CHECK(r.all_converged);
            CHECK(is_cohesive_tu(r.game).holds);
        }
    }

    SECTION("player ceiling") {
        InterferenceChannel ic;
        ic.K = 9;
        ic.gains.assign(9, std::vector<double>(9, 0.1));
        ic.powers.assign(9, 1.0);
        CHECK_THROWS_AS(tx_game(ic), KTooLarge);
    }
}

TEST_CASE("strongly asymmetric three-link channel: coalition demands vs grand value") {
    InterferenceChannel ic{3,
                           {{0.3019, 0.3772, 1.8021e-2},
                            {2.6256e-8, 3.1413e-5, 2.5662e-5},
                            {2.6893e-6, 1.9941e-3, 0.8502}},
                           {1.0, 1.0, 1.0},
                           1.0};
    const TxGameResult r = tx_game(ic);
    REQUIRE(r.all_converged);

    // with the grand coalition's input covariance fully optimized, its
    // beamforming gain is large enough to satisfy every subcoalition demand
    const CoreResult full = core_feasible(r.game);
    CHECK(full.status == CoreStatus::NonEmpty);
    REQUIRE(full.witness_point.has_value());
    for (Coalition s = 1; s < 7; ++s) {
        double share = 0.0;
        for (std::size_t k : members(s)) share += (*full.witness_point)[k];
        CHECK(share >= r.game.value(s) - 1e-7);
    }

    // without input correlation (independent full-power signaling) the grand
    // value drops far enough that the optimized subcoalition demands become
    // jointly unsatisfiable: the demand LP is infeasible with a balanced
    // certificate — this channel's cooperative gain is what fills the core
    std::vector<double> hybrid(8, 0.0);
    for (Coalition s = 1; s < 7; ++s) hybrid[s] = r.game.value(s);
    hybrid[7] = value_full_power_baseline(ic, 0b111);
    CHECK(hybrid[7] < r.game.value(7) - 0.1);  // beamforming gain is material
    const CoreResult baseline = core_feasible(TuGame(3, hybrid));
    CHECK(baseline.status == CoreStatus::Empty);
    REQUIRE(baseline.certificate.has_value());
    CHECK(baseline.certificate->family_value > baseline.certificate->grand_value);
}
