#include "varcap/segmentation.hpp"

#include "varcap/error.hpp"
#include "varcap/numeric.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

namespace varcap {

namespace {

// Sample indices ordered by (price desc, timestamp asc). The index order is
// the timestamp order, so ties at the threshold price enter the high region
// earliest-first.
std::vector<std::size_t> descending_order(const std::vector<double>& prices) {
    std::vector<std::size_t> order(prices.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return prices[a] > prices[b];
    });
    return order;
}

struct SortedView {
    std::vector<double> sorted;      // prices in descending order
    std::vector<double> prefix_sum;  // prefix_sum[i] = sum of top i prices
    std::vector<double> running_mean; // running_mean[i] = mean of top i+1 prices
    double total = 0.0;
    double p_avg = 0.0;
    bool constant = false;
};

// The running-mean recurrence m += (p - m)/(i+1) keeps the high-region mean
// non-increasing in floating point as well, which is what makes the k
// monotonicity invariant hold exactly on the curve grid.
SortedView build_sorted_view(const PriceSeries& series) {
    SortedView view;
    const auto order = descending_order(series.prices);
    const std::size_t n = order.size();
    view.sorted.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        view.sorted[i] = series.prices[order[i]];
    }
    view.prefix_sum.resize(n + 1);
    view.prefix_sum[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        view.prefix_sum[i + 1] = view.prefix_sum[i] + view.sorted[i];
    }
    view.running_mean.resize(n);
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        m += (view.sorted[i] - m) / static_cast<double>(i + 1);
        view.running_mean[i] = m;
    }
    view.total = view.prefix_sum[n];
    view.p_avg = view.total / static_cast<double>(n);
    view.constant = view.sorted.front() == view.sorted.back();
    return view;
}

PriceSegmentation point_from_view(const SortedView& view, std::size_t n, std::size_t high_count) {
    PriceSegmentation seg;
    seg.high_count = high_count;
    seg.x = static_cast<double>(high_count) / static_cast<double>(n);
    if (view.constant) {
        const double c = view.sorted.front();
        seg.p_thresh = c;
        seg.p_avg = c;
        seg.p_high = c;
        seg.p_low = c;
        seg.k = 1.0;
        return seg;
    }
    seg.p_avg = view.p_avg;
    seg.p_thresh = view.sorted[high_count - 1];
    seg.p_high = view.running_mean[high_count - 1];
    seg.p_low = (view.total - view.prefix_sum[high_count]) /
                static_cast<double>(n - high_count);
    seg.k = seg.p_high / seg.p_avg;
    return seg;
}

void check_mean_positive(const SortedView& view) {
    if (view.constant) {
        return; // k := 1 by symmetry, no division involved
    }
    if (!(view.p_avg > 0.0)) {
        throw Error("series mean price is not positive (" + format_double(view.p_avg) +
                    "); the relative price factor k is undefined");
    }
}

} // namespace

PriceSegmentation segment(const PriceSeries& series, double x) {
    validate(series);
    if (!(x > 0.0 && x < 1.0)) {
        throw Error("shutdown fraction x must lie in (0, 1), got " + format_double(x));
    }
    const auto view = build_sorted_view(series);
    check_mean_positive(view);
    const std::size_t n = series.prices.size();
    const auto requested = static_cast<std::size_t>(
        std::llround(x * static_cast<double>(n)));
    const std::size_t high_count = std::clamp<std::size_t>(requested, 1, n - 1);
    return point_from_view(view, n, high_count);
}

VariabilityCurve variability_curve(const PriceSeries& series) {
    validate(series);
    const auto view = build_sorted_view(series);
    check_mean_positive(view);
    const std::size_t n = series.prices.size();
    VariabilityCurve curve;
    curve.source_interval = series.interval;
    curve.n = n;
    curve.p_avg = view.constant ? view.sorted.front() : view.p_avg;
    curve.points.resize(n - 1);
    auto* points = curve.points.data();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 1; i < static_cast<std::ptrdiff_t>(n); ++i) {
        points[i - 1] = point_from_view(view, n, static_cast<std::size_t>(i));
    }
    return curve;
}

std::string curve_to_csv(const VariabilityCurve& curve) {
    std::string out = "x,k,p_thresh,p_high,p_low\n";
    for (const auto& p : curve.points) {
        out += format_double(p.x);
        out += ',';
        out += format_double(p.k);
        out += ',';
        out += format_double(p.p_thresh);
        out += ',';
        out += format_double(p.p_high);
        out += ',';
        out += format_double(p.p_low);
        out += '\n';
    }
    return out;
}

std::string curve_to_json(const VariabilityCurve& curve) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : curve.points) {
        nlohmann::json obj;
        obj["x"] = p.x;
        obj["k"] = p.k;
        obj["p_thresh"] = p.p_thresh;
        obj["p_high"] = p.p_high;
        obj["p_low"] = p.p_low;
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

} // namespace varcap
