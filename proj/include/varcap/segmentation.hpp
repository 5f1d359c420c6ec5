#pragma once

#include "varcap/time_series.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace varcap {

// One split of a price series into a high-price region (the high_count
// highest-priced samples) and the complementary low-price region.
struct PriceSegmentation {
    double x = 0.0;              // high_count / n, exactly
    std::size_t high_count = 0;  // in [1, n-1]
    double p_thresh = 0.0;       // smallest price inside the high region
    double p_avg = 0.0;          // mean over all samples
    double p_high = 0.0;         // mean over the high region
    double p_low = 0.0;          // mean over the low region
    double k = 1.0;              // p_high / p_avg
};

// All splits x = i/n for i = 1..n-1, ordered by increasing x.
// k is non-increasing along the curve and the first point's p_high is the
// series maximum.
struct VariabilityCurve {
    std::vector<PriceSegmentation> points;
    std::int64_t source_interval = 0; // seconds
    std::size_t n = 0;                // sample count of the source series
    double p_avg = 0.0;
};

// Splits at the grid point nearest the requested fraction: high_count =
// round(x * n) clamped to [1, n-1]; the reported x is the snapped value.
// Ties at the threshold price enter the high region in timestamp order.
// Requires 0 < x < 1 and mean price > 0 (throws varcap::Error otherwise).
// A constant series yields p_high = p_low = p_avg and k = 1.
PriceSegmentation segment(const PriceSeries& series, double x);

// One descending sort plus a prefix scan; O(n log n) total. The per-point
// fill is parallelized but produces output identical to the sequential scan.
VariabilityCurve variability_curve(const PriceSeries& series);

// CSV with header "x,k,p_thresh,p_high,p_low", one row per point, shortest
// round-trip number formatting.
std::string curve_to_csv(const VariabilityCurve& curve);

// JSON array of point objects with the same fields as the CSV.
std::string curve_to_json(const VariabilityCurve& curve);

} // namespace varcap
