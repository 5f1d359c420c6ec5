#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>

namespace varcap {

// Shortest decimal form that parses back to the exact same double
// (locale-independent). Used for all CSV/JSON-adjacent number output.
std::string format_double(double value);

// Fixed-precision decimal form, locale-independent. Used for SVG coordinates
// and human-facing summaries.
std::string format_fixed(double value, int precision);

// Strict locale-independent parse of a full token; throws varcap::Error on
// trailing garbage, empty input, or non-finite results.
double parse_double(std::string_view token);

// Compensated (Neumaier) summation.
double kahan_sum(std::span<const double> values);

// |a - b| <= tol * max(|a|, |b|, floor). The floor keeps the comparison
// meaningful when the compared quantities cancel to near zero.
inline bool approx_equal(double a, double b, double tol, double floor = 0.0) {
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(floor)});
    return std::abs(a - b) <= tol * scale;
}

} // namespace varcap
