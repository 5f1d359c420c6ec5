#include "varcap/error.hpp"
#include "varcap/numeric.hpp"
#include "varcap/reference.hpp"
#include "varcap/segmentation.hpp"
#include "varcap/tco.hpp"

#include <doctest.h>

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

PriceSeries random_series(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> price(-50.0, 500.0);
    std::vector<double> prices(n);
    for (auto& p : prices) {
        p = price(rng);
    }
    return make_series(std::move(prices));
}

PriceSeries two_level_series() {
    std::vector<double> prices(100, 50.0);
    for (std::size_t i = 0; i < 10; ++i) {
        prices[i * 10] = 200.0; // 10 samples at 200, 90 at 50
    }
    return make_series(std::move(prices));
}

} // namespace

TEST_CASE("cost structure derives psi") {
    const auto cost = make_cost_structure(200.0, 4.0, 1.0, 25.0);
    CHECK(cost.psi == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(viability_bound(cost) == doctest::Approx(3.0).epsilon(1e-12));

    CHECK_THROWS_AS(make_cost_structure(-1.0, 4.0, 1.0, 25.0), Error);
    CHECK_THROWS_AS(make_cost_structure(200.0, 0.0, 1.0, 25.0), Error);
    CHECK_THROWS_AS(make_cost_structure(200.0, 4.0, 0.0, 25.0), Error);
    CHECK_THROWS_AS(make_cost_structure(200.0, 4.0, 1.0, -25.0), Error);

    const auto from_psi = cost_structure_from_psi(2.0, 4.0, 1.0, 25.0);
    CHECK(from_psi.fixed_costs == doctest::Approx(200.0));
    CHECK(from_psi.psi == doctest::Approx(2.0));
}

TEST_CASE("viability bound values") {
    CHECK(viability_bound(cost_structure_from_psi(2.0, 10.0, 1.0, 50.0)) == doctest::Approx(3.0));
    CHECK(viability_bound(cost_structure_from_psi(0.0, 10.0, 1.0, 50.0)) == doctest::Approx(1.0));
    CHECK(viability_bound(cost_structure_from_psi(1.6, 10.0, 1.0, 50.0)) == doctest::Approx(2.6));
}

TEST_CASE("worked example: toy series, F=200, P=1, x=0.25") {
    const auto series = make_series({10, 20, 30, 40});
    const auto seg = segment(series, 0.25);
    const auto cost = make_cost_structure(200.0, series.span_hours(), 1.0, mean_price(series));
    CHECK(cost.psi == doctest::Approx(2.0).epsilon(1e-12));

    const auto a = assess(seg, cost);
    CHECK(a.e_ao == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(a.e_ws == doctest::Approx(60.0).epsilon(1e-9));
    // direct low-region summation: (10 + 20 + 30) * 1 MW * 1 h = 60
    CHECK(ref::e_ws_by_summation(series, seg.high_count, cost.power_mw) ==
          doctest::Approx(60.0).epsilon(1e-12));
    CHECK(a.cpc_ao == doctest::Approx(75.0).epsilon(1e-12));
    CHECK(a.cpc_ws == doctest::Approx(260.0 / 3.0).epsilon(1e-12));
    CHECK_FALSE(a.viable); // k = 1.6 < psi + 1 = 3
}

TEST_CASE("zero fixed costs make any price variability viable") {
    const auto series = make_series({10, 20, 30, 40});
    const auto cost = make_cost_structure(0.0, series.span_hours(), 1.0, mean_price(series));
    for (double x : {0.25, 0.5, 0.75}) {
        const auto a = assess(segment(series, x), cost);
        CHECK(a.viable);
        CHECK(a.cpc_ws < a.cpc_ao);
    }
}

TEST_CASE("constant prices are never viable for positive fixed costs") {
    const auto series = make_series({50, 50, 50, 50});
    const auto cost = make_cost_structure(10.0, series.span_hours(), 1.0, mean_price(series));
    for (double x : {0.25, 0.5, 0.75}) {
        const auto a = assess(segment(series, x), cost);
        CHECK_FALSE(a.viable);
        CHECK(a.cpc_ws >= a.cpc_ao);
    }
}

TEST_CASE("efficiency gain matches the CPC quotient") {
    const auto series = make_series({10, 20, 30, 40});
    const auto seg = segment(series, 0.25);
    const auto cost = make_cost_structure(200.0, series.span_hours(), 1.0, mean_price(series));
    const double gain = efficiency_gain(seg, cost);
    // 1 - 2.6 / (3 * 0.75) = -0.1555...
    CHECK(gain == doctest::Approx(1.0 - 2.6 / 2.25).epsilon(1e-12));
    const auto a = assess(seg, cost);
    CHECK(gain == doctest::Approx(1.0 - a.cpc_ws / a.cpc_ao).epsilon(1e-12));
}

TEST_CASE("p_avg mismatch between segmentation and cost structure is an error") {
    const auto series = make_series({10, 20, 30, 40});
    const auto seg = segment(series, 0.25);
    const auto cost = make_cost_structure(200.0, 4.0, 1.0, 99.0);
    CHECK_THROWS_WITH_AS(assess(seg, cost), doctest::Contains("p_avg mismatch"), Error);
    CHECK_THROWS_AS(efficiency_gain(seg, cost), Error);
}

TEST_CASE("break-even on the toy curve") {
    const auto series = make_series({10, 20, 30, 40});
    const auto curve = variability_curve(series);
    const double t = series.span_hours();
    const double p_avg = mean_price(series);
    // psi = 2: bound 3 exceeds max k = 1.6, never viable
    CHECK_FALSE(break_even(curve, cost_structure_from_psi(2.0, t, 1.0, p_avg)).has_value());
    // psi = 0.1: bound 1.1, all three grid points satisfy k > 1.1,
    // the largest is x = 0.75
    const auto be = break_even(curve, cost_structure_from_psi(0.1, t, 1.0, p_avg));
    REQUIRE(be.has_value());
    CHECK(*be == 0.75);
    // psi = 0.35: bound 1.35, k(0.5) = 1.4 qualifies but k(0.75) = 1.2 does not
    const auto be2 = break_even(curve, cost_structure_from_psi(0.35, t, 1.0, p_avg));
    REQUIRE(be2.has_value());
    CHECK(*be2 == 0.5);
}

TEST_CASE("optimize on the two-level series") {
    const auto series = two_level_series();
    CHECK(mean_price(series) == doctest::Approx(65.0).epsilon(1e-12));
    const auto curve = variability_curve(series);
    const auto cost = cost_structure_from_psi(1.0, series.span_hours(), 1.0, mean_price(series));
    const auto result = optimize(curve, cost);
    REQUIRE(result.x_opt.has_value());
    CHECK(*result.x_opt == doctest::Approx(0.10).epsilon(1e-12));
    CHECK(result.k_opt == doctest::Approx(200.0 / 65.0).epsilon(1e-12));
    REQUIRE(result.gain.has_value());
    CHECK(*result.gain == doctest::Approx(7.0 / 117.0).epsilon(1e-9)); // ~5.99%
    CHECK(result.p_thresh_opt == 200.0);
    REQUIRE(result.x_be.has_value());
    CHECK(*result.x_opt <= *result.x_be);
}

TEST_CASE("optimize returns absent results when nothing beats always-on") {
    const auto series = make_series({10, 20, 30, 40});
    const auto curve = variability_curve(series);
    const auto cost = cost_structure_from_psi(2.0, series.span_hours(), 1.0, mean_price(series));
    const auto result = optimize(curve, cost);
    CHECK_FALSE(result.x_opt.has_value());
    CHECK_FALSE(result.gain.has_value());
    CHECK_FALSE(result.x_be.has_value());
    CHECK_FALSE(result.cpc_ws_opt.has_value());
    CHECK(result.cpc_ao == doctest::Approx(75.0));

    const auto constant = make_series({50, 50, 50, 50});
    const auto const_curve = variability_curve(constant);
    const auto const_cost =
        cost_structure_from_psi(0.5, constant.span_hours(), 1.0, mean_price(constant));
    CHECK_FALSE(optimize(const_curve, const_cost).x_opt.has_value());
}

TEST_CASE("optimizer agrees with the exhaustive reference on random input") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> psi_dist(0.01, 6.0);
    for (int trial = 0; trial < 12; ++trial) {
        const auto series = random_series(400 + trial * 37, 1000 + trial);
        const auto curve = variability_curve(series);
        const auto cost = cost_structure_from_psi(psi_dist(rng), series.span_hours(), 2.5,
                                                  mean_price(series));
        const auto fast = optimize(curve, cost);
        const auto naive = ref::optimize_exhaustive(curve, cost);
        if (naive.has_value()) {
            REQUIRE(fast.x_opt.has_value());
            CHECK(*fast.x_opt == curve.points[*naive].x);
            REQUIRE(fast.x_be.has_value());
            CHECK(*fast.x_opt <= *fast.x_be);
            REQUIRE(fast.gain.has_value());
            CHECK(*fast.gain >= 0.0);
        } else {
            CHECK_FALSE(fast.x_opt.has_value());
        }
    }
}

TEST_CASE("viability is consistent across formulations at every grid point") {
    for (std::uint64_t seed : {5ull, 6ull}) {
        const auto series = random_series(600, seed);
        const auto curve = variability_curve(series);
        const auto cost =
            cost_structure_from_psi(1.7, series.span_hours(), 3.0, mean_price(series));
        const double bound = viability_bound(cost);
        for (const auto& p : curve.points) {
            const auto a = assess(p, cost);
            CHECK(a.viable == (a.cpc_ws < a.cpc_ao));
            CHECK(a.viable == (p.k > bound));
            CHECK(a.viable == (efficiency_gain(p, cost) > 0.0));
            CHECK(approx_equal(a.e_ws, cost.horizon_hours * cost.power_mw * (1.0 - p.x) * p.p_low,
                               1e-9, a.e_ao));
        }
    }
}

TEST_CASE("scale invariance of verdicts under joint price and cost scaling") {
    const auto series = random_series(300, 8);
    auto scaled = series;
    for (auto& p : scaled.prices) {
        p *= 2.0;
    }
    const auto curve_a = variability_curve(series);
    const auto curve_b = variability_curve(scaled);
    const auto cost_a = make_cost_structure(5000.0, series.span_hours(), 1.0, mean_price(series));
    const auto cost_b =
        make_cost_structure(10000.0, scaled.span_hours(), 1.0, mean_price(scaled));
    CHECK(cost_a.psi == cost_b.psi);
    const auto ra = optimize(curve_a, cost_a);
    const auto rb = optimize(curve_b, cost_b);
    CHECK(ra.x_be == rb.x_be);
    CHECK(ra.x_opt == rb.x_opt);
    CHECK(ra.gain == rb.gain);
}
