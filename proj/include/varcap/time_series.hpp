#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace varcap {

// Unix seconds, UTC. All timestamps are normalized to UTC at parse time.
using UnixTime = std::int64_t;

std::string format_rfc3339(UnixTime t);

// Accepts RFC 3339 with 'T' or ' ' separator, optional seconds and fractional
// part (fraction must be zero), and a mandatory offset ('Z' or +-HH:MM).
// Throws varcap::Error on malformed input.
UnixTime parse_rfc3339(std::string_view text);

// Calendar <-> epoch-day conversions (proleptic Gregorian).
std::int64_t days_from_civil(int year, unsigned month, unsigned day);
void civil_from_days(std::int64_t days, int& year, unsigned& month, unsigned& day);

// Regularly sampled electricity prices over one analysis horizon.
// Timestamps form the arithmetic sequence start + i * interval, which makes
// the spacing invariant hold by construction; parsers validate before
// building one of these.
struct PriceSeries {
    UnixTime start = 0;
    std::int64_t interval = 0; // seconds between samples, > 0
    std::string currency;      // label only, never converted
    std::vector<double> prices;

    std::size_t size() const { return prices.size(); }
    UnixTime time_at(std::size_t i) const {
        return start + static_cast<std::int64_t>(i) * interval;
    }
    double span_hours() const {
        return static_cast<double>(prices.size()) * static_cast<double>(interval) / 3600.0;
    }
};

// Throws varcap::Error if n < 2, interval <= 0, or any price is non-finite.
void validate(const PriceSeries& series);

// Arithmetic mean over all samples.
double mean_price(const PriceSeries& series);

struct MixSample {
    double fossil = 0.0;    // MWh
    double renewable = 0.0; // MWh
};

// Fossil/renewable generation volumes on the same kind of regular grid.
struct GenerationMix {
    UnixTime start = 0;
    std::int64_t interval = 0;
    std::vector<MixSample> samples;

    std::size_t size() const { return samples.size(); }
    UnixTime time_at(std::size_t i) const {
        return start + static_cast<std::int64_t>(i) * interval;
    }
};

// Throws varcap::Error on empty data, non-positive interval, negative
// volumes, or a sample with fossil + renewable == 0.
void validate(const GenerationMix& mix);

} // namespace varcap
