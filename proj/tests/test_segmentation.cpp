#include "varcap/error.hpp"
#include "varcap/numeric.hpp"
#include "varcap/reference.hpp"
#include "varcap/segmentation.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

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

PriceSeries random_series(std::size_t n, std::uint64_t seed, double lo = -50.0,
                          double hi = 500.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> price(lo, hi);
    std::vector<double> prices(n);
    for (auto& p : prices) {
        p = price(rng);
    }
    return make_series(std::move(prices));
}

} // namespace

TEST_CASE("four-sample split at x = 0.25") {
    const auto seg = segment(make_series({10, 20, 30, 40}), 0.25);
    CHECK(seg.high_count == 1);
    CHECK(seg.x == 0.25);
    CHECK(seg.p_thresh == 40.0);
    CHECK(seg.p_avg == 25.0);
    CHECK(seg.p_high == 40.0);
    CHECK(seg.p_low == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(seg.k == doctest::Approx(1.6).epsilon(1e-12));
}

TEST_CASE("constant series has no variability") {
    const auto seg = segment(make_series({50, 50, 50, 50}), 0.25);
    CHECK(seg.k == 1.0);
    CHECK(seg.p_high == 50.0);
    CHECK(seg.p_low == 50.0);
    CHECK(seg.p_avg == 50.0);
}

TEST_CASE("p_low from the weighted-mean identity matches the direct mean") {
    const auto seg = segment(make_series({10, 20, 30, 40}), 0.5);
    CHECK(seg.k == doctest::Approx(1.4).epsilon(1e-12));
    const double via_identity = seg.p_avg * (seg.k * seg.x - 1.0) / (seg.x - 1.0);
    CHECK(via_identity == doctest::Approx(15.0).epsilon(1e-12));
    CHECK(seg.p_low == doctest::Approx(15.0).epsilon(1e-12));
}

TEST_CASE("requested x snaps to the grid") {
    const auto seg = segment(make_series({10, 20, 30, 40}), 0.3);
    CHECK(seg.high_count == 1); // round(0.3 * 4) = 1
    CHECK(seg.x == 0.25);
    // extreme requests clamp into [1, n-1]
    CHECK(segment(make_series({10, 20, 30, 40}), 0.01).high_count == 1);
    CHECK(segment(make_series({10, 20, 30, 40}), 0.99).high_count == 3);
}

TEST_CASE("threshold ties enter the high region in timestamp order") {
    // two samples share the threshold price; the earlier one is in the
    // high region, so the low region keeps the later duplicate
    const auto series = make_series({30, 10, 30, 40});
    const auto seg = segment(series, 0.5);
    CHECK(seg.high_count == 2);
    CHECK(seg.p_thresh == 30.0);
    CHECK(seg.p_high == doctest::Approx((40.0 + 30.0) / 2.0));
    CHECK(seg.p_low == doctest::Approx((10.0 + 30.0) / 2.0));
}

TEST_CASE("segment rejects out-of-domain requests") {
    const auto series = make_series({10, 20, 30, 40});
    CHECK_THROWS_AS(segment(series, 0.0), Error);
    CHECK_THROWS_AS(segment(series, 1.0), Error);
    CHECK_THROWS_AS(segment(series, -0.5), Error);
    CHECK_THROWS_WITH_AS(segment(make_series({-10, -20, 10, 5}), 0.25),
                         doctest::Contains("not positive"), Error);
}

TEST_CASE("curve of the four-sample series") {
    const auto curve = variability_curve(make_series({10, 20, 30, 40}));
    REQUIRE(curve.points.size() == 3);
    CHECK(curve.points[0].x == 0.25);
    CHECK(curve.points[0].k == doctest::Approx(1.6).epsilon(1e-12));
    CHECK(curve.points[1].x == 0.5);
    CHECK(curve.points[1].k == doctest::Approx(1.4).epsilon(1e-12));
    CHECK(curve.points[2].x == 0.75);
    CHECK(curve.points[2].k == doctest::Approx(1.2).epsilon(1e-12));
}

TEST_CASE("constant series curve is flat at k = 1") {
    const auto curve = variability_curve(make_series({50, 50, 50, 50, 50}));
    for (const auto& p : curve.points) {
        CHECK(p.k == 1.0);
    }
}

TEST_CASE("curve points match the serial reference within 1e-9") {
    for (std::uint64_t seed : {10ull, 11ull, 12ull}) {
        const auto series = random_series(300, seed);
        const auto curve = variability_curve(series);
        const auto naive = ref::curve_naive(series);
        REQUIRE(curve.points.size() == naive.size());
        for (std::size_t i = 0; i < naive.size(); ++i) {
            CHECK(approx_equal(curve.points[i].p_high, naive[i].p_high, 1e-9, curve.p_avg));
            CHECK(approx_equal(curve.points[i].p_low, naive[i].p_low, 1e-9, curve.p_avg));
            CHECK(approx_equal(curve.points[i].k, naive[i].k, 1e-9, 1.0));
            CHECK(curve.points[i].p_thresh == naive[i].p_thresh);
        }
    }
}

TEST_CASE("curve invariants: weighted mean, monotonic k, max first") {
    for (std::uint64_t seed : {20ull, 21ull}) {
        const auto series = random_series(500, seed);
        const auto curve = variability_curve(series);
        const double max_price = *std::max_element(series.prices.begin(), series.prices.end());
        CHECK(curve.points.front().p_high == max_price);
        for (std::size_t i = 0; i < curve.points.size(); ++i) {
            const auto& p = curve.points[i];
            CHECK(approx_equal(p.x * p.p_high + (1.0 - p.x) * p.p_low, p.p_avg, 1e-9, p.p_avg));
            CHECK(p.p_low <= p.p_thresh + 1e-9 * std::abs(p.p_thresh));
            CHECK(p.p_thresh <= p.p_high + 1e-9 * std::abs(p.p_high));
            CHECK(p.k > 1.0); // non-constant series with positive mean
            if (i > 0) {
                CHECK(p.k <= curve.points[i - 1].k);
            }
        }
    }
}

TEST_CASE("monotonic k holds on adversarial plateaus") {
    // 0.1 sums are inexact; the running-mean construction must still never
    // let k tick upward along the curve
    std::vector<double> prices(64, 0.1);
    for (std::size_t i = 40; i < 64; ++i) {
        prices[i] = 0.05;
    }
    const auto curve = variability_curve(make_series(std::move(prices)));
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        CHECK(curve.points[i].k <= curve.points[i - 1].k);
    }
}

TEST_CASE("permutation invariance for distinct prices") {
    const auto series = random_series(200, 33);
    auto shuffled = series;
    std::mt19937_64 rng(99);
    std::shuffle(shuffled.prices.begin(), shuffled.prices.end(), rng);
    const auto a = variability_curve(series);
    const auto b = variability_curve(shuffled);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].x == b.points[i].x);
        CHECK(a.points[i].k == b.points[i].k);
    }
}

TEST_CASE("scale equivariance") {
    const auto series = random_series(150, 44, 1.0, 400.0);
    auto doubled = series;
    for (auto& p : doubled.prices) {
        p *= 2.0; // exact in binary floating point
    }
    const auto a = variability_curve(series);
    const auto b = variability_curve(doubled);
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].k == b.points[i].k);
        CHECK(b.points[i].p_thresh == 2.0 * a.points[i].p_thresh);
        CHECK(b.points[i].p_high == 2.0 * a.points[i].p_high);
    }
    auto scaled = series;
    for (auto& p : scaled.prices) {
        p *= 3.7;
    }
    const auto c = variability_curve(scaled);
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(approx_equal(c.points[i].k, a.points[i].k, 1e-12, 1.0));
    }
}

TEST_CASE("curve serialization") {
    const auto curve = variability_curve(make_series({10, 20, 30, 40}));
    const auto csv = curve_to_csv(curve);
    CHECK(csv.rfind("x,k,p_thresh,p_high,p_low\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    const auto json = curve_to_json(curve);
    CHECK(json.find("\"p_thresh\"") != std::string::npos);
    CHECK(json.find("\"k\"") != std::string::npos);
}
