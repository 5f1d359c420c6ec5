#pragma once

#include "varcap/time_series.hpp"

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>

namespace varcap::ingest {

enum class PriceFormat { generic, smard, aemo };
enum class MixFormat { generic, smard };

PriceFormat price_format_from_name(std::string_view name);
MixFormat mix_format_from_name(std::string_view name);

// Parses a price CSV in the declared dialect. Rows are sorted by timestamp,
// the interval is inferred from the first gap, and every invariant of
// PriceSeries is checked; any malformed input throws ParseError with the
// offending line number.
PriceSeries parse_prices(std::istream& input, PriceFormat format);

// Parses a generation-mix CSV. For the smard dialect, per-technology columns
// are classified and summed: wind/solar/biomass count as renewable,
// coal/gas as fossil; everything else is ignored.
GenerationMix parse_mix(std::istream& input, MixFormat format);

// Mean over consecutive non-overlapping windows of target_interval/interval
// samples, stamped at each window start; a trailing partial window is
// dropped. target_interval must be a positive multiple of the input interval
// and the result must keep n >= 2.
PriceSeries resample(const PriceSeries& series, std::int64_t target_interval);

// Generic dialect: header "timestamp,price", RFC 3339 timestamps, '.' decimal
// point. Prices are written in shortest round-trip form, so
// parse(to_generic_csv(s)) reproduces s bit for bit.
std::string to_generic_csv(const PriceSeries& series);
std::string to_generic_mix_csv(const GenerationMix& mix);

// Canonical interchange document:
// { "interval_s": int, "currency": str, "start": rfc3339, "prices": [...] }
std::string to_canonical_json(const PriceSeries& series);
PriceSeries from_canonical_json(std::string_view text);

// Loads a series from a canonical JSON document or a generic CSV file,
// sniffing by the first non-whitespace byte.
PriceSeries load_series(const std::filesystem::path& path);

// "1h", "1d", "1w", or a plain integer number of seconds (case-sensitive).
std::int64_t parse_duration_seconds(std::string_view text);

} // namespace varcap::ingest
