#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "spinboson/analysis.hpp"
#include "spinboson/errors.hpp"

using namespace spinboson;

TEST_CASE("convergence study at the default parameters")
{
    const ModelParams p;
    const std::vector<std::size_t> cutoffs{50, 100, 150, 200, 250};
    const auto rows = convergence_study(p, cutoffs);
    REQUIRE(rows.size() == 5);

    // 1 - lambda_max and counts from an independent numpy.linalg.eigh run.
    const double r_prob[] = {3.940126429884394e-4, 1.9724229552553485e-4, 1.312143621017281e-4,
                             9.811818552230012e-05, 7.823451205446474e-05};
    const std::size_t non_decay[] = {6, 8, 8, 10, 12};
    const std::size_t decay[] = {0, 6, 12, 16, 18};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].cutoff == cutoffs[i]);
        CHECK(rows[i].r_prob == doctest::Approx(r_prob[i]).epsilon(1e-9));
        CHECK(rows[i].r_amp == doctest::Approx(std::sqrt(r_prob[i])).epsilon(1e-9));
        CHECK(rows[i].count_non_decay == non_decay[i]);
        CHECK(rows[i].count_decay == decay[i]);
        CHECK(rows[i].lambda_min >= -1e-10);
        CHECK(rows[i].lambda_max <= 1.0 + 1e-10);
    }
    CHECK(rows.back().r_prob <= rows.front().r_prob);
}

TEST_CASE("convergence study edge cases")
{
    ModelParams p;
    p.beta = 0.0;
    const std::vector<std::size_t> two{2};
    const auto rows = convergence_study(p, two);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].r_prob == 0.0);

    const std::vector<std::size_t> dup{10, 10};
    const std::vector<std::size_t> descending{20, 10};
    const std::vector<std::size_t> tiny{1, 10};
    CHECK_THROWS_AS(convergence_study(p, dup), InvalidParameter);
    CHECK_THROWS_AS(convergence_study(p, descending), InvalidParameter);
    CHECK_THROWS_AS(convergence_study(p, tiny), InvalidParameter);
}

TEST_CASE("spectrum_vs_time")
{
    ModelParams p;
    p.cutoff = 60;

    const std::vector<double> zero{0.0};
    const auto at_zero = spectrum_vs_time(p, zero);
    REQUIRE(at_zero.size() == 1);
    for (double l : at_zero[0].eigenvalues) CHECK(l >= p.theta_hi);

    const std::vector<double> pair{0.0, 0.15};
    const auto reports = spectrum_vs_time(p, pair);
    CHECK(reports[1].count_non_decay <= reports[0].count_non_decay);
    CHECK(reports[1].count_non_decay < 60);

    // Reuse of the H diagonalization gives the same bits as a fresh build.
    const std::vector<double> single{0.15};
    const auto reused = spectrum_vs_time(p, single);
    const auto fresh = classify_spectrum(build_b_effective(p), p.theta_hi, p.theta_lo);
    CHECK(reused[0].eigenvalues == fresh.eigenvalues);
    CHECK(reused[0].count_non_decay == fresh.count_non_decay);
    CHECK(reused[0].count_decay == fresh.count_decay);

    const std::vector<double> bad{std::nan("")};
    CHECK_THROWS_AS(spectrum_vs_time(p, bad), InvalidParameter);
}

TEST_CASE("figure data")
{
    const ModelParams p;
    const auto [nondecay, decay] = figure_data(p);
    const auto b = build_b_effective(p);

    const std::pair<const FigureSeries*, Eigen::Index> cases[] = {{&nondecay, 249}, {&decay, 0}};
    for (auto [series, index] : cases) {
        const auto state = special_state_at(b, index, Thresholds::from(p));
        REQUIRE(series->probabilities.size() == 250);
        double total = 0.0, wrong = 0.0;
        for (std::size_t k = 0; k < 250; ++k) {
            const double prob = series->probabilities[k];
            CHECK(prob >= 0.0);
            CHECK(std::abs(prob - std::norm(state.bath_amplitudes(static_cast<Eigen::Index>(k)))) <= 1e-12);
            CHECK(series->phases[k] > -std::numbers::pi);
            CHECK(series->phases[k] <= std::numbers::pi);
            total += prob;
            if ((k % 2 == 1) == (series->parity == FockParity::even)) wrong += prob;
        }
        CHECK(std::abs(total - 1.0) <= 1e-10);
        CHECK(wrong <= 1e-10);
    }
    CHECK(nondecay.label == StateClass::non_decay);
    CHECK(decay.label == StateClass::decay);
    CHECK(decay.parity == FockParity::even);

    const auto [even_only, decay_only] = figure_data(p, true);
    for (std::size_t level : decay_only.fock_levels) CHECK(level % 2 == 0);
    CHECK(decay_only.fock_levels.size() == 125);
    for (std::size_t level : even_only.fock_levels) CHECK(level % 2 == (nondecay.parity == FockParity::odd ? 1u : 0u));
}

TEST_CASE("figure data at t = 0 is degenerate but well defined")
{
    ModelParams p;
    p.cutoff = 20;
    p.time = 0.0;
    const auto [first, last] = figure_data(p);
    double total = 0.0;
    for (double prob : first.probabilities) total += prob;
    CHECK(std::abs(total - 1.0) <= 1e-10);
    CHECK(first.label == StateClass::non_decay);
    CHECK(last.label == StateClass::non_decay);
}

TEST_CASE("phase wrapping")
{
    CHECK(wrap_phase(-std::numbers::pi) == std::numbers::pi);
    CHECK(wrap_phase(std::arg(Complex(-1.0, -0.0))) == std::numbers::pi);
    CHECK(wrap_phase(0.5) == 0.5);
}
