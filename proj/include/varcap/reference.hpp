#pragma once

#include "varcap/segmentation.hpp"
#include "varcap/tco.hpp"

#include <cstddef>
#include <optional>
#include <vector>

// Serial reference implementations. These recompute every quantity from the
// raw samples along an independent route (own sort, compensated summation,
// no prefix reuse) and exist so tests and the benchmark can cross-check the
// fast kernels against them. Keep them boring.
namespace varcap::ref {

// Direct split at a given high-region cardinality: partitions by
// (price desc, timestamp asc) and re-means each region with compensated
// summation. O(n log n) per call.
PriceSegmentation segment_direct(const PriceSeries& series, std::size_t high_count);

// One segment_direct call per grid point; O(n^2 log n) overall.
std::vector<PriceSegmentation> curve_naive(const PriceSeries& series);

// Energy cost under shutdowns by summing the low-region prices themselves:
// P * interval_hours * sum(low prices). Derives its own partition.
double e_ws_by_summation(const PriceSeries& series, std::size_t high_count,
                         double power_mw);

// Naive optimizer loop: assess every grid point, keep the smallest cpc_ws
// (ties toward smaller x), absent when no point beats cpc_ao.
std::optional<std::size_t> optimize_exhaustive(const VariabilityCurve& curve,
                                               const CostStructure& cost);

} // namespace varcap::ref
