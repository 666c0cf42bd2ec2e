#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "coopnet/matrix.hpp"

using namespace coopnet;

namespace {

SymMat random_spd(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Mat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = u(rng);
    // A^T A + n I is comfortably positive definite
    SymMat m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += a(k, i) * a(k, j);
            m.set(i, j, s + (i == j ? static_cast<double>(n) : 0.0));
        }
    return m;
}

// independent determinant for cross-checks, dims 1..3 only
double cofactor_det(const SymMat& m) {
    switch (m.dim()) {
        case 1:
            return m(0, 0);
        case 2:
            return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        case 3:
            return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                   m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                   m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        default:
            FAIL("cofactor_det only covers dim <= 3");
            return 0.0;
    }
}

double min_eigenvalue(const SymMat& m) { return jacobi_eigen(m).values.front(); }

}  // namespace

TEST_CASE("log-determinant matches hand values") {
    CHECK(logdet_pd(SymMat::identity(3)) == Catch::Approx(0.0).margin(1e-14));

    SymMat d2(2);
    d2.set(0, 0, 2.0);
    d2.set(1, 1, 2.0);
    CHECK(logdet_pd(d2) == Catch::Approx(2.0 * std::log(2.0)).epsilon(1e-13));

    SymMat m(2);
    m.set(0, 0, 2.0);
    m.set(1, 1, 2.0);
    m.set(0, 1, 1.0);
    CHECK(logdet_pd(m) == Catch::Approx(std::log(3.0)).epsilon(1e-13));
}

TEST_CASE("log-determinant is additive over block diagonals") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const SymMat a = random_spd(rng, 3);
        const SymMat b = random_spd(rng, 2);
        SymMat blk(5);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i; j < 3; ++j) blk.set(i, j, a(i, j));
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = i; j < 2; ++j) blk.set(3 + i, 3 + j, b(i, j));
        CHECK(logdet_pd(blk) ==
              Catch::Approx(logdet_pd(a) + logdet_pd(b)).margin(1e-10));
    }
}

TEST_CASE("log-determinant agrees with a cofactor expansion") {
    std::mt19937_64 rng(7);
    for (std::size_t n = 1; n <= 3; ++n)
        for (int trial = 0; trial < 25; ++trial) {
            const SymMat m = random_spd(rng, n);
            CHECK(std::exp(logdet_pd(m)) == Catch::Approx(cofactor_det(m)).epsilon(1e-8));
        }
}

TEST_CASE("cholesky rejects indefinite and singular input") {
    SymMat indef(2);
    indef.set(0, 0, 1.0);
    indef.set(1, 1, 1.0);
    indef.set(0, 1, 2.0);  // eigenvalues 3 and -1
    CHECK_THROWS_AS(cholesky(indef), NotPositiveDefinite);

    SymMat rank1(2);
    rank1.set(0, 0, 1.0);
    rank1.set(1, 1, 1.0);
    rank1.set(0, 1, 1.0);
    CHECK_THROWS_AS(cholesky(rank1), NotPositiveDefinite);

    CHECK_THROWS_AS(logdet_pd(SymMat(2)), NotPositiveDefinite);  // all zeros
}

TEST_CASE("cholesky factor reconstructs the input") {
    std::mt19937_64 rng(11);
    const SymMat m = random_spd(rng, 6);
    const Mat l = cholesky(m);
    const Mat r = l * l.transposed();
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            CHECK(r(i, j) == Catch::Approx(m(i, j)).margin(1e-12));
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i + 1; j < 6; ++j) CHECK(l(i, j) == 0.0);
}

TEST_CASE("positive definite solve leaves a tiny residual") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng() % 8);
        const SymMat m = random_spd(rng, n);
        Mat b(n, 2);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < 2; ++c) b(i, c) = u(rng);
        const Mat x = solve_pd(m, b);
        const Mat r = m.as_mat() * x;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < 2; ++c)
                CHECK(std::abs(r(i, c) - b(i, c)) <= 1e-10);
    }
}

TEST_CASE("inverse of a positive definite matrix") {
    std::mt19937_64 rng(17);
    const SymMat m = random_spd(rng, 5);
    const SymMat inv = inverse_pd(m);
    const Mat prod = m.as_mat() * inv.as_mat();
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            CHECK(prod(i, j) == Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-11));
}

TEST_CASE("jacobi eigendecomposition") {
    SECTION("diagonal input returns sorted diagonal") {
        SymMat d(3);
        d.set(0, 0, 3.0);
        d.set(1, 1, -1.0);
        d.set(2, 2, 2.0);
        const EigenSym e = jacobi_eigen(d);
        CHECK(e.values[0] == Catch::Approx(-1.0));
        CHECK(e.values[1] == Catch::Approx(2.0));
        CHECK(e.values[2] == Catch::Approx(3.0));
    }

    SECTION("reconstruction and orthogonality on random symmetric input") {
        std::mt19937_64 rng(19);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int trial = 0; trial < 10; ++trial) {
            const std::size_t n = 2 + static_cast<std::size_t>(rng() % 7);
            SymMat m(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) m.set(i, j, u(rng));
            const EigenSym e = jacobi_eigen(m);

            const Mat vt = e.vectors.transposed();
            const Mat gram_v = vt * e.vectors;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    CHECK(gram_v(i, j) == Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-11));

            Mat lam(n, n);
            for (std::size_t i = 0; i < n; ++i) lam(i, i) = e.values[i];
            const Mat rec = e.vectors * lam * vt;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    CHECK(rec(i, j) == Catch::Approx(m(i, j)).margin(1e-10));
        }
    }
}

TEST_CASE("capped PSD projection matches hand examples") {
    const std::vector<double> caps{1.0, 1.0};

    SECTION("negative eigenvalue is clipped") {
        SymMat m(2);
        m.set(0, 0, -1.0);
        m.set(1, 1, 2.0);
        const SymMat p = project_psd_capped(m, caps);
        CHECK(p(0, 0) == Catch::Approx(0.0).margin(1e-12));
        CHECK(p(1, 1) == Catch::Approx(1.0).margin(1e-12));
        CHECK(p(0, 1) == Catch::Approx(0.0).margin(1e-12));
    }

    SECTION("over-cap diagonal is rescaled, preserving definiteness") {
        SymMat m(2);
        m.set(0, 0, 2.0);
        m.set(1, 1, 2.0);
        m.set(0, 1, 1.0);
        const SymMat p = project_psd_capped(m, caps);
        CHECK(p(0, 0) == Catch::Approx(1.0).margin(1e-12));
        CHECK(p(1, 1) == Catch::Approx(1.0).margin(1e-12));
        CHECK(p(0, 1) == Catch::Approx(0.5).margin(1e-12));
    }

    SECTION("feasible input passes through unchanged") {
        SymMat m(2);
        m.set(0, 0, 0.5);
        m.set(1, 1, 0.25);
        m.set(0, 1, 0.1);
        const SymMat p = project_psd_capped(m, caps);
        CHECK(p(0, 0) == 0.5);
        CHECK(p(1, 1) == 0.25);
        CHECK(p(0, 1) == 0.1);
    }
}

TEST_CASE("capped PSD projection output is always feasible") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> cap_dist(0.5, 3.0);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng() % 6);
        SymMat m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) m.set(i, j, u(rng));
        std::vector<double> caps(n);
        for (double& c : caps) c = cap_dist(rng);

        const SymMat p = project_psd_capped(m, caps);
        CHECK(min_eigenvalue(p) >= -1e-12);
        for (std::size_t i = 0; i < n; ++i) CHECK(p(i, i) <= caps[i] + 1e-12);
    }
}

TEST_CASE("gram product h q h^T") {
    Mat h(2, 3);
    h(0, 0) = 1.0;
    h(0, 1) = 2.0;
    h(0, 2) = 0.0;
    h(1, 0) = 0.0;
    h(1, 1) = 1.0;
    h(1, 2) = -1.0;
    SymMat q(3);
    q.set(0, 0, 1.0);
    q.set(1, 1, 2.0);
    q.set(2, 2, 3.0);
    const SymMat g = gram(h, q);
    // rows scaled by q: hq = [[1,4,0],[0,2,-3]]; times h^T
    CHECK(g(0, 0) == Catch::Approx(9.0));
    CHECK(g(0, 1) == Catch::Approx(4.0));
    CHECK(g(1, 0) == Catch::Approx(4.0));
    CHECK(g(1, 1) == Catch::Approx(5.0));
}
