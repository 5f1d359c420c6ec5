#include "varcap/reference.hpp"

#include "varcap/error.hpp"
#include "varcap/numeric.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace varcap::ref {

namespace {

std::vector<std::size_t> descending_order(const std::vector<double>& prices) {
    std::vector<std::size_t> order(prices.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return prices[a] > prices[b];
    });
    return order;
}

} // namespace

PriceSegmentation segment_direct(const PriceSeries& series, std::size_t high_count) {
    validate(series);
    const std::size_t n = series.prices.size();
    if (high_count < 1 || high_count > n - 1) {
        throw Error("high_count out of range");
    }
    const auto order = descending_order(series.prices);
    std::vector<double> high, low;
    high.reserve(high_count);
    low.reserve(n - high_count);
    for (std::size_t i = 0; i < n; ++i) {
        (i < high_count ? high : low).push_back(series.prices[order[i]]);
    }
    PriceSegmentation seg;
    seg.high_count = high_count;
    seg.x = static_cast<double>(high_count) / static_cast<double>(n);
    if (series.prices[order.front()] == series.prices[order.back()]) {
        const double c = series.prices.front();
        seg.p_thresh = c;
        seg.p_avg = c;
        seg.p_high = c;
        seg.p_low = c;
        seg.k = 1.0;
        return seg;
    }
    seg.p_thresh = high.back();
    seg.p_avg = kahan_sum(series.prices) / static_cast<double>(n);
    seg.p_high = kahan_sum(high) / static_cast<double>(high_count);
    seg.p_low = kahan_sum(low) / static_cast<double>(n - high_count);
    seg.k = seg.p_high / seg.p_avg;
    return seg;
}

std::vector<PriceSegmentation> curve_naive(const PriceSeries& series) {
    validate(series);
    const std::size_t n = series.prices.size();
    std::vector<PriceSegmentation> points;
    points.reserve(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
        points.push_back(segment_direct(series, i));
    }
    return points;
}

double e_ws_by_summation(const PriceSeries& series, std::size_t high_count, double power_mw) {
    validate(series);
    const std::size_t n = series.prices.size();
    if (high_count < 1 || high_count > n - 1) {
        throw Error("high_count out of range");
    }
    const auto order = descending_order(series.prices);
    std::vector<double> low;
    low.reserve(n - high_count);
    for (std::size_t i = high_count; i < n; ++i) {
        low.push_back(series.prices[order[i]]);
    }
    const double interval_hours = static_cast<double>(series.interval) / 3600.0;
    return power_mw * interval_hours * kahan_sum(low);
}

std::optional<std::size_t> optimize_exhaustive(const VariabilityCurve& curve,
                                               const CostStructure& cost) {
    std::optional<std::size_t> best;
    double best_cpc = 0.0;
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        const auto a = assess(curve.points[i], cost);
        if (!(a.cpc_ws < a.cpc_ao)) {
            continue;
        }
        if (!best || a.cpc_ws < best_cpc) {
            best = i;
            best_cpc = a.cpc_ws;
        }
    }
    return best;
}

} // namespace varcap::ref
