#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "spinboson/errors.hpp"
#include "spinboson/model.hpp"

using namespace spinboson;

TEST_CASE("defaults are the published parameter set")
{
    const ModelParams p;
    CHECK(p.epsilon == 0.5);
    CHECK(p.omega == 0.1);
    CHECK(p.beta == 0.6);
    CHECK(p.time == 0.15);
    CHECK(p.cutoff == 250);
    CHECK(p.theta_hi == 0.99);
    CHECK(p.theta_lo == 0.01);
    CHECK(ModelParams::hbar == 1.0);
    CHECK_NOTHROW(p.validate());
    CHECK_FALSE(p.is_degenerate());
}

TEST_CASE("parameter validation")
{
    ModelParams p;
    p.cutoff = 1;
    CHECK_THROWS_AS(p.validate(), InvalidParameter);

    p = {};
    p.omega = 0.0;
    CHECK_NOTHROW(p.validate());
    CHECK(p.is_degenerate());
    p.omega = -0.1;
    CHECK_THROWS_AS(p.validate(), InvalidParameter);

    p = {};
    p.theta_hi = 0.4;
    CHECK_THROWS_AS(p.validate(), InvalidParameter);
    p = {};
    p.theta_lo = 0.6;
    CHECK_THROWS_AS(p.validate(), InvalidParameter);
    p = {};
    p.beta = std::nan("");
    CHECK_THROWS_AS(p.validate(), InvalidParameter);
}

TEST_CASE("basis index is spin-major and bijective")
{
    const std::size_t n = 7;
    for (std::size_t k = 0; k < 2 * n; ++k) {
        const auto b = BasisIndex::from_flat(k, n);
        CHECK(b.flat(n) == k);
        CHECK(b.spin == (k < n ? Spin::up : Spin::down));
    }
    CHECK(BasisIndex{Spin::down, 3}.flat(n) == n + 3);
    CHECK_THROWS_AS(BasisIndex::from_flat(2 * n, n), InvalidParameter);
    CHECK_THROWS_AS((BasisIndex{Spin::up, n}.flat(n)), InvalidParameter);
}

TEST_CASE("ladder operators")
{
    SUBCASE("smallest size")
    {
        const auto l = ladder_operators(2);
        CHECK(l.annihilation(0, 1) == Complex(1.0, 0.0));
        CHECK(l.annihilation(0, 0) == Complex(0.0));
        CHECK(l.annihilation(1, 0) == Complex(0.0));
        CHECK(l.annihilation(1, 1) == Complex(0.0));
    }
    SUBCASE("sqrt(n) rule")
    {
        const auto l = ladder_operators(3);
        CHECK(l.annihilation(1, 2).real() == doctest::Approx(1.41421356).epsilon(1e-8));
    }
    SUBCASE("creation is the exact adjoint and truncates the top level")
    {
        for (std::size_t n : {2u, 5u, 11u}) {
            const auto l = ladder_operators(n);
            CHECK(l.creation == l.annihilation.adjoint());
            const auto top = static_cast<Eigen::Index>(n - 1);
            CHECK(l.creation.col(top).isZero(0.0));
        }
    }
    SUBCASE("commutator is identity except the truncated corner")
    {
        for (std::size_t n = 2; n <= 6; ++n) {
            const auto l = ladder_operators(n);
            const oracle::Matrix comm = oracle::naive_product(l.annihilation, l.creation) -
                                        oracle::naive_product(l.creation, l.annihilation);
            oracle::Matrix expected = oracle::Matrix::Identity(comm.rows(), comm.cols());
            expected(comm.rows() - 1, comm.cols() - 1) = 1.0 - static_cast<double>(n);
            CHECK(oracle::max_abs(comm - expected) < 1e-14);
        }
    }
    SUBCASE("number operator")
    {
        const auto l = ladder_operators(9);
        const ComplexMatrix num = number_operator(9);
        CHECK(oracle::max_abs(l.creation * l.annihilation - num) < 1e-14);
        for (Eigen::Index k = 0; k < 9; ++k) CHECK(num(k, k).real() == static_cast<double>(k));
    }
    CHECK_THROWS_AS(ladder_operators(1), InvalidParameter);
    CHECK_THROWS_AS(ladder_operators(0), InvalidParameter);
}

TEST_CASE("hamiltonian at N=2 matches the hand expansion")
{
    ModelParams p;
    p.cutoff = 2;
    const ComplexMatrix h = build_hamiltonian(p).matrix();
    // basis (up,0), (up,1), (down,0), (down,1)
    const double expected[4][4] = {
        {0.5, 0.0, 0.0, 0.6},
        {0.0, 0.6, 0.6, 0.0},
        {0.0, 0.6, 0.0, 0.0},
        {0.6, 0.0, 0.0, 0.1},
    };
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            CHECK(h(i, j).real() == doctest::Approx(expected[i][j]).epsilon(1e-15));
            CHECK(h(i, j).imag() == 0.0);
        }
}

TEST_CASE("hamiltonian agrees with the element-wise construction")
{
    for (std::size_t n : {2u, 3u, 8u, 31u}) {
        ModelParams p;
        p.cutoff = n;
        p.epsilon = 0.37;
        p.omega = 0.21;
        p.beta = 1.3;
        const auto h = build_hamiltonian(p);
        CHECK(oracle::max_abs(h.matrix() - oracle::hamiltonian_by_elements(0.37, 0.21, 1.3, n)) < 1e-15);
        CHECK(h.matrix().imag().isZero(0.0));
    }
}

TEST_CASE("decoupled limit is diagonal with constant splitting eps")
{
    ModelParams p;
    p.beta = 0.0;
    p.cutoff = 12;
    const ComplexMatrix h = build_hamiltonian(p).matrix();
    ComplexMatrix off = h;
    off.diagonal().setZero();
    CHECK(off.isZero(0.0));
    for (Eigen::Index k = 0; k < 12; ++k) {
        CHECK(h(k, k).real() == doctest::Approx(0.5 + 0.1 * static_cast<double>(k)));
        CHECK(h(12 + k, 12 + k).real() == doctest::Approx(0.1 * static_cast<double>(k)));
        CHECK(h(k, k).real() - h(12 + k, 12 + k).real() == doctest::Approx(0.5).epsilon(1e-14));
    }
}

TEST_CASE("parity operator")
{
    const ComplexMatrix pi2 = parity_operator(2).matrix();
    const double diag[4] = {1.0, -1.0, -1.0, 1.0};
    for (int k = 0; k < 4; ++k) CHECK(pi2(k, k).real() == diag[k]);

    for (std::size_t n : {2u, 7u, 250u}) {
        const ComplexMatrix pi = parity_operator(n).matrix();
        CHECK(oracle::max_abs(pi * pi - ComplexMatrix::Identity(pi.rows(), pi.cols())) <= 1e-14);
    }
    CHECK_THROWS_AS(parity_operator(1), InvalidParameter);
}

TEST_CASE("parity commutes with the hamiltonian for random parameters")
{
    std::mt19937_64 rng(20241019);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_int_distribution<std::size_t> size(2, 40);
    for (int trial = 0; trial < 25; ++trial) {
        ModelParams p;
        p.epsilon = u(rng);
        p.omega = std::abs(u(rng));
        p.beta = u(rng);
        p.cutoff = size(rng);
        const ComplexMatrix h = build_hamiltonian(p).matrix();
        const ComplexMatrix pi = parity_operator(p.cutoff).matrix();
        const double scale = oracle::max_abs(h);
        const oracle::Matrix comm = oracle::naive_product(pi, h) - oracle::naive_product(h, pi);
        CHECK(oracle::max_abs(comm) <= 1e-12 * scale);
        CHECK(oracle::max_abs(h - h.adjoint()) <= 1e-12 * scale);
    }
}

TEST_CASE("parity commutes with the default hamiltonian")
{
    const ModelParams p;
    const ComplexMatrix h = build_hamiltonian(p).matrix();
    const ComplexMatrix pi = parity_operator(p.cutoff).matrix();
    CHECK(oracle::max_abs(pi * h - h * pi) <= 1e-12);
}

TEST_CASE("hermitian operator construction check")
{
    ComplexMatrix m(2, 2);
    m << 1.0, Complex(0.0, 1.0), Complex(0.0, -1.0), 2.0;
    CHECK_NOTHROW(HermitianOperator{m});
    m(0, 1) = Complex(0.0, 1.0 + 1e-9);
    CHECK_THROWS_AS(HermitianOperator{m}, ContractViolation);
    CHECK_THROWS_AS(HermitianOperator{ComplexMatrix(2, 3)}, ContractViolation);
    ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
    bad(0, 0) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(HermitianOperator{bad}, ContractViolation);
}
