#include "varcap/numeric.hpp"

#include "varcap/error.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace varcap {

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) {
        throw Error("number formatting failed");
    }
    return std::string(buf, ptr);
}

std::string format_fixed(double value, int precision) {
    char buf[96];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, precision);
    if (ec != std::errc{}) {
        throw Error("number formatting failed");
    }
    return std::string(buf, ptr);
}

double parse_double(std::string_view token) {
    if (token.empty()) {
        throw Error("empty numeric field");
    }
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw Error("not a number: '" + std::string(token) + "'");
    }
    if (!std::isfinite(value)) {
        throw Error("non-finite number: '" + std::string(token) + "'");
    }
    return value;
}

double kahan_sum(std::span<const double> values) {
    double sum = 0.0;
    double comp = 0.0;
    for (double v : values) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    return sum + comp;
}

} // namespace varcap
