#include "varcap/error.hpp"
#include "varcap/numeric.hpp"
#include "varcap/scenario.hpp"
#include "varcap/segmentation.hpp"
#include "varcap/tco.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace varcap;

namespace {

PriceSeries make_series(std::vector<double> prices, std::int64_t interval = 3600) {
    PriceSeries s;
    s.start = 1704067200;
    s.interval = interval;
    s.currency = "EUR";
    s.prices = std::move(prices);
    return s;
}

GenerationMix make_mix(std::vector<MixSample> samples, std::int64_t interval = 3600) {
    GenerationMix mix;
    mix.start = 1704067200;
    mix.interval = interval;
    mix.samples = std::move(samples);
    return mix;
}

} // namespace

TEST_CASE("amplification formula at hand-computed points") {
    const auto series = make_series({100.0, -5.0, 100.0, 100.0});
    // beta: 0.5, 0.9 (irrelevant), 0, 1
    const auto mix = make_mix({{50, 50}, {90, 10}, {0, 30}, {20, 0}});
    const auto out = scenario::amplify(series, mix);
    CHECK(out.prices[0] == doctest::Approx(125.0).epsilon(1e-12)); // 25 + 100
    CHECK(out.prices[1] == -5.0);                                  // untouched
    CHECK(out.prices[2] == doctest::Approx(50.0).epsilon(1e-12));  // all renewable halves
    CHECK(out.prices[3] == doctest::Approx(200.0).epsilon(1e-12)); // all fossil doubles
    CHECK(out.start == series.start);
    CHECK(out.interval == series.interval);
    CHECK(out.currency == series.currency);
}

TEST_CASE("amplification preserves signs and fixes non-positive prices") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> price(-100.0, 400.0);
    std::uniform_real_distribution<double> vol(0.0, 50.0);
    std::vector<double> prices(500);
    std::vector<MixSample> samples(500);
    for (std::size_t i = 0; i < prices.size(); ++i) {
        prices[i] = price(rng);
        samples[i] = {vol(rng), vol(rng) + 0.001};
    }
    const auto series = make_series(std::move(prices));
    const auto mix = make_mix(std::move(samples));
    const auto out = scenario::amplify(series, mix);
    for (std::size_t i = 0; i < out.prices.size(); ++i) {
        CHECK((out.prices[i] > 0.0) == (series.prices[i] > 0.0));
        if (series.prices[i] <= 0.0) {
            CHECK(out.prices[i] == series.prices[i]);
        }
    }
    // applying it twice only re-amplifies the positive part; non-positives stay put
    const auto twice = scenario::amplify(out, mix);
    for (std::size_t i = 0; i < out.prices.size(); ++i) {
        if (series.prices[i] <= 0.0) {
            CHECK(twice.prices[i] == series.prices[i]);
        }
    }
}

TEST_CASE("amplification is the identity exactly at fossil share 1/3") {
    const auto series = make_series({90.0, 90.0});
    const auto at_third = scenario::amplify(series, make_mix({{1, 2}, {1, 2}}));
    CHECK(at_third.prices[0] == doctest::Approx(90.0).epsilon(1e-12));
    const auto off_third = scenario::amplify(series, make_mix({{1, 1}, {1, 1}}));
    CHECK(off_third.prices[0] > 90.0 * (1.0 + 1e-9)); // beta = 1/2 scales by 1.25
}

TEST_CASE("amplify rejects misaligned inputs") {
    const auto series = make_series({1.0, 2.0, 3.0});
    CHECK_THROWS_WITH_AS(scenario::amplify(series, make_mix({{1, 1}, {1, 1}})),
                         doctest::Contains("not aligned"), Error);
    auto mix = make_mix({{1, 1}, {1, 1}, {1, 1}});
    mix.start += 3600;
    CHECK_THROWS_AS(scenario::amplify(series, mix), Error);
    auto coarse = make_mix({{1, 1}, {1, 1}, {1, 1}}, 7200);
    CHECK_THROWS_AS(scenario::amplify(series, coarse), Error);
}

TEST_CASE("fossil share computation") {
    const auto beta = scenario::fossil_shares(make_mix({{10, 30}, {5, 5}}));
    CHECK(beta[0] == doctest::Approx(0.25));
    CHECK(beta[1] == doctest::Approx(0.5));
}

TEST_CASE("scaling fixed costs scales psi linearly") {
    const auto cost = cost_structure_from_psi(2.0, 100.0, 1.0, 80.0);
    CHECK(scenario::scale_fixed_costs(cost, 0.8).psi == doctest::Approx(1.6).epsilon(1e-12));
    CHECK(scenario::scale_fixed_costs(cost, 0.19).psi == doctest::Approx(0.38).epsilon(1e-12));
    const auto same = scenario::scale_fixed_costs(cost, 1.0);
    CHECK(same.fixed_costs == cost.fixed_costs);
    CHECK(same.psi == cost.psi);
    CHECK_THROWS_AS(scenario::scale_fixed_costs(cost, 0.0), Error);
    CHECK_THROWS_AS(scenario::scale_fixed_costs(cost, -1.0), Error);
}

TEST_CASE("psi sweep gains never increase with psi") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> price(1.0, 300.0);
    std::vector<double> prices(800);
    for (auto& p : prices) {
        p = price(rng);
    }
    const auto series = make_series(std::move(prices));
    const auto curve = variability_curve(series);
    const auto base = cost_structure_from_psi(1.0, series.span_hours(), 1.0, mean_price(series));
    const auto sweep = scenario::sweep_psi(curve, base, scenario::default_psi_grid());
    REQUIRE(sweep.gains.size() == 50);
    for (std::size_t i = 1; i < sweep.gains.size(); ++i) {
        CHECK(sweep.gains[i] <= sweep.gains[i - 1]);
    }
    CHECK(sweep.gains.front() >= 0.0);
}

TEST_CASE("huge psi kills every gain") {
    const auto series = make_series({10, 20, 30, 40});
    const auto curve = variability_curve(series);
    const auto base = cost_structure_from_psi(1.0, series.span_hours(), 1.0, mean_price(series));
    const auto sweep = scenario::sweep_psi(curve, base, {1000.0});
    CHECK(sweep.gains[0] == 0.0);
}

TEST_CASE("sweep validates its grid") {
    const auto series = make_series({10, 20, 30, 40});
    const auto curve = variability_curve(series);
    const auto base = cost_structure_from_psi(1.0, series.span_hours(), 1.0, mean_price(series));
    CHECK_THROWS_AS(scenario::sweep_psi(curve, base, {}), Error);
    CHECK_THROWS_AS(scenario::sweep_psi(curve, base, {2.0, 1.0}), Error);
    CHECK_THROWS_AS(scenario::sweep_psi(curve, base, {-1.0, 1.0}), Error);
    CHECK_THROWS_AS(scenario::sweep_psi(curve, base, {0.0, 1.0}), Error);
}

TEST_CASE("default psi grid is 50 log-spaced points over [0.1, 10]") {
    const auto grid = scenario::default_psi_grid();
    REQUIRE(grid.size() == 50);
    CHECK(grid.front() == 0.1);
    CHECK(grid.back() == 10.0);
    const double ratio = grid[1] / grid[0];
    for (std::size_t i = 2; i < grid.size(); ++i) {
        CHECK(grid[i] / grid[i - 1] == doctest::Approx(ratio).epsilon(1e-9));
    }
}

TEST_CASE("sweep csv serialization") {
    scenario::PsiSweep sweep;
    sweep.psi_values = {0.5, 1.0};
    sweep.gains = {0.25, 0.0};
    CHECK(scenario::sweep_to_csv(sweep) == "psi,gain\n0.5,0.25\n1,0\n");
}
