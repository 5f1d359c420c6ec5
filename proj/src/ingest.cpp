#include "varcap/ingest.hpp"

#include "varcap/error.hpp"
#include "varcap/numeric.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace varcap::ingest {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::string unquote(std::string s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split_fields(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string token;
    for (char c : line) {
        if (c == sep) {
            fields.push_back(unquote(trim(token)));
            token.clear();
        } else {
            token.push_back(c);
        }
    }
    fields.push_back(unquote(trim(token)));
    return fields;
}

// Reads logical lines, dropping a UTF-8 BOM on the first one and trailing \r.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& line) {
        if (!std::getline(in_, line)) {
            return false;
        }
        ++line_no_;
        if (line_no_ == 1 && line.size() >= 3 && line[0] == '\xEF' && line[1] == '\xBB' &&
            line[2] == '\xBF') {
            line.erase(0, 3);
        }
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        return true;
    }

    std::size_t line_no() const { return line_no_; }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

// German-locale decimal: thousands '.' stripped, ',' becomes the decimal point.
double parse_german_double(const std::string& raw, std::size_t line_no) {
    std::string s;
    s.reserve(raw.size());
    for (char c : raw) {
        if (c == '.') {
            continue;
        }
        s.push_back(c == ',' ? '.' : c);
    }
    try {
        return parse_double(s);
    } catch (const Error& e) {
        throw ParseError(line_no, std::string(e.what()));
    }
}

double parse_plain_double(const std::string& raw, std::size_t line_no, const char* column) {
    try {
        return parse_double(raw);
    } catch (const Error& e) {
        throw ParseError(line_no, std::string("column '") + column + "': " + e.what());
    }
}

// SMARD exports carry local wall-clock times ("01.01.2024 00:00"). They are
// interpreted at a fixed offset (default +01:00 for Germany) unless the row
// carries its own offset; a DST transition in offset-less data then surfaces
// as a duplicate timestamp or a spacing gap and is rejected downstream.
UnixTime parse_smard_datetime(const std::string& raw, std::size_t line_no,
                              std::int64_t fixed_offset_s) {
    // dd.MM.yyyy HH:mm[:ss][ +HH:MM]
    const auto fail = [&](const char* why) -> UnixTime {
        throw ParseError(line_no, "bad SMARD timestamp '" + raw + "': " + why);
    };
    std::string s = raw;
    std::int64_t offset = fixed_offset_s;
    const auto plus = s.find_last_of("+-");
    if (plus != std::string::npos && plus > 10 && s.size() - plus == 6 && s[plus + 3] == ':') {
        const std::string off = s.substr(plus);
        s = trim(s.substr(0, plus));
        offset = ((off[1] - '0') * 10 + (off[2] - '0')) * 3600;
        offset += ((off[4] - '0') * 10 + (off[5] - '0')) * 60;
        if (off[0] == '-') {
            offset = -offset;
        }
    }
    unsigned day = 0, month = 0;
    int year = 0, hh = 0, mm = 0, ss = 0;
    const int got = std::sscanf(s.c_str(), "%2u.%2u.%4d %2d:%2d:%2d", &day, &month, &year, &hh, &mm, &ss);
    if (got < 5) {
        fail("expected dd.MM.yyyy HH:mm");
    }
    if (month < 1 || month > 12 || day < 1 || day > 31 || hh > 23 || mm > 59 || ss > 59) {
        fail("field out of range");
    }
    return days_from_civil(year, month, day) * 86400 + hh * 3600 + mm * 60 + ss - offset;
}

// AEMO settlement dates ("2024/01/01 00:30:00") are NEM market time, a fixed
// +10:00 offset with no DST.
UnixTime parse_aemo_datetime(const std::string& raw, std::size_t line_no) {
    int year = 0, hh = 0, mm = 0, ss = 0;
    unsigned month = 0, day = 0;
    const int got = std::sscanf(raw.c_str(), "%4d/%2u/%2u %2d:%2d:%2d", &year, &month, &day, &hh, &mm, &ss);
    if (got < 5) {
        throw ParseError(line_no, "bad AEMO timestamp '" + raw + "': expected yyyy/MM/dd HH:mm:ss");
    }
    if (month < 1 || month > 12 || day < 1 || day > 31 || hh > 23 || mm > 59 || ss > 59) {
        throw ParseError(line_no, "bad AEMO timestamp '" + raw + "': field out of range");
    }
    constexpr std::int64_t nem_offset_s = 10 * 3600;
    return days_from_civil(year, month, day) * 86400 + hh * 3600 + mm * 60 + ss - nem_offset_s;
}

struct Row {
    UnixTime time;
    double value;
    std::size_t line_no;
};

// Sorts rows, rejects duplicates and irregular spacing, returns (start, interval).
std::pair<UnixTime, std::int64_t> finalize_grid(std::vector<Row>& rows, const char* what) {
    if (rows.empty()) {
        throw ParseError(std::string("no data rows in ") + what + " input");
    }
    if (rows.size() < 2) {
        throw ParseError(std::string(what) + " input needs at least 2 samples");
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.time < b.time; });
    const std::int64_t interval = rows[1].time - rows[0].time;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const std::int64_t gap = rows[i].time - rows[i - 1].time;
        if (gap == 0) {
            throw ParseError(rows[i].line_no,
                             "duplicate timestamp " + format_rfc3339(rows[i].time));
        }
        if (gap != interval) {
            throw ParseError(rows[i].line_no,
                             "irregular spacing at " + format_rfc3339(rows[i].time) + ": " +
                                 std::to_string(gap) + " s, expected " + std::to_string(interval) +
                                 " s");
        }
    }
    return {rows[0].time, interval};
}

PriceSeries parse_generic_prices(std::istream& input) {
    LineReader reader(input);
    std::string line;
    if (!reader.next(line)) {
        throw ParseError("empty input");
    }
    const auto header = split_fields(line, ',');
    if (header.size() < 2 || lower(header[0]) != "timestamp" || lower(header[1]) != "price") {
        throw ParseError(1, "expected header 'timestamp,price'");
    }
    std::vector<Row> rows;
    while (reader.next(line)) {
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split_fields(line, ',');
        if (fields.size() != 2) {
            throw ParseError(reader.line_no(),
                             "expected 2 columns, got " + std::to_string(fields.size()));
        }
        UnixTime t = 0;
        try {
            t = parse_rfc3339(fields[0]);
        } catch (const Error& e) {
            throw ParseError(reader.line_no(), std::string("column 'timestamp': ") + e.what());
        }
        const double price = parse_plain_double(fields[1], reader.line_no(), "price");
        rows.push_back({t, price, reader.line_no()});
    }
    PriceSeries series;
    auto [start, interval] = finalize_grid(rows, "price");
    series.start = start;
    series.interval = interval;
    series.currency = "EUR";
    series.prices.reserve(rows.size());
    for (const auto& r : rows) {
        series.prices.push_back(r.value);
    }
    validate(series);
    return series;
}

PriceSeries parse_smard_prices(std::istream& input) {
    LineReader reader(input);
    std::string line;
    if (!reader.next(line)) {
        throw ParseError("empty input");
    }
    const auto header = split_fields(line, ';');
    std::ptrdiff_t time_col = -1;
    std::ptrdiff_t price_col = -1;
    std::ptrdiff_t offset_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string h = header[i];
        if (time_col < 0 && (h.find("Datum von") != std::string::npos ||
                             lower(h).find("datum") == 0)) {
            time_col = static_cast<std::ptrdiff_t>(i);
        }
        if (h.find("Deutschland/Luxemburg [\xE2\x82\xAC/MWh]") != std::string::npos) {
            price_col = static_cast<std::ptrdiff_t>(i);
        }
        if (lower(h).find("offset") != std::string::npos) {
            offset_col = static_cast<std::ptrdiff_t>(i);
        }
    }
    if (time_col < 0) {
        throw ParseError(1, "SMARD header: no 'Datum von' column");
    }
    if (price_col < 0) {
        throw ParseError(1, "SMARD header: no 'Deutschland/Luxemburg [\xE2\x82\xAC/MWh]' column");
    }
    std::vector<Row> rows;
    while (reader.next(line)) {
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split_fields(line, ';');
        const auto need = static_cast<std::size_t>(std::max(time_col, price_col)) + 1;
        if (fields.size() < need) {
            throw ParseError(reader.line_no(),
                             "expected at least " + std::to_string(need) + " columns, got " +
                                 std::to_string(fields.size()));
        }
        std::string stamp = fields[static_cast<std::size_t>(time_col)];
        if (offset_col >= 0 && static_cast<std::size_t>(offset_col) < fields.size()) {
            stamp += " " + fields[static_cast<std::size_t>(offset_col)];
        }
        const UnixTime t = parse_smard_datetime(stamp, reader.line_no(), 3600);
        const std::string& raw = fields[static_cast<std::size_t>(price_col)];
        if (raw.empty() || raw == "-") {
            throw ParseError(reader.line_no(), "missing price sample (gap-filling is not supported)");
        }
        const double price = parse_german_double(raw, reader.line_no());
        rows.push_back({t, price, reader.line_no()});
    }
    PriceSeries series;
    auto [start, interval] = finalize_grid(rows, "price");
    series.start = start;
    series.interval = interval;
    series.currency = "EUR";
    series.prices.reserve(rows.size());
    for (const auto& r : rows) {
        series.prices.push_back(r.value);
    }
    validate(series);
    return series;
}

PriceSeries parse_aemo_prices(std::istream& input) {
    LineReader reader(input);
    std::string line;
    if (!reader.next(line)) {
        throw ParseError("empty input");
    }
    const std::string first_header = line;
    auto header = split_fields(line, ',');
    std::ptrdiff_t region_col = -1, time_col = -1, rrp_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string h = lower(header[i]);
        if (h == "region") {
            region_col = static_cast<std::ptrdiff_t>(i);
        } else if (h == "settlementdate") {
            time_col = static_cast<std::ptrdiff_t>(i);
        } else if (h == "rrp") {
            rrp_col = static_cast<std::ptrdiff_t>(i);
        }
    }
    if (region_col < 0 || time_col < 0 || rrp_col < 0) {
        throw ParseError(1, "AEMO header: need REGION, SETTLEMENTDATE and RRP columns");
    }
    std::vector<Row> rows;
    while (reader.next(line)) {
        if (trim(line).empty()) {
            continue;
        }
        if (line == first_header) {
            continue; // concatenated monthly exports repeat the header
        }
        const auto fields = split_fields(line, ',');
        const auto need = static_cast<std::size_t>(std::max({region_col, time_col, rrp_col})) + 1;
        if (fields.size() < need) {
            throw ParseError(reader.line_no(),
                             "expected at least " + std::to_string(need) + " columns, got " +
                                 std::to_string(fields.size()));
        }
        if (fields[static_cast<std::size_t>(region_col)] != "SA1") {
            continue;
        }
        const UnixTime t = parse_aemo_datetime(fields[static_cast<std::size_t>(time_col)],
                                               reader.line_no());
        const double price = parse_plain_double(fields[static_cast<std::size_t>(rrp_col)],
                                                reader.line_no(), "RRP");
        rows.push_back({t, price, reader.line_no()});
    }
    PriceSeries series;
    auto [start, interval] = finalize_grid(rows, "price");
    series.start = start;
    series.interval = interval;
    series.currency = "AUD";
    series.prices.reserve(rows.size());
    for (const auto& r : rows) {
        series.prices.push_back(r.value);
    }
    validate(series);
    return series;
}

struct MixRow {
    UnixTime time;
    MixSample sample;
    std::size_t line_no;
};

GenerationMix finalize_mix(std::vector<MixRow>& rows) {
    if (rows.empty()) {
        throw ParseError("no data rows in generation-mix input");
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const MixRow& a, const MixRow& b) { return a.time < b.time; });
    GenerationMix mix;
    if (rows.size() < 2) {
        throw ParseError("generation-mix input needs at least 2 samples");
    }
    mix.start = rows[0].time;
    mix.interval = rows[1].time - rows[0].time;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const std::int64_t gap = rows[i].time - rows[i - 1].time;
        if (gap == 0) {
            throw ParseError(rows[i].line_no,
                             "duplicate timestamp " + format_rfc3339(rows[i].time));
        }
        if (gap != mix.interval) {
            throw ParseError(rows[i].line_no,
                             "irregular spacing at " + format_rfc3339(rows[i].time));
        }
    }
    mix.samples.reserve(rows.size());
    for (const auto& r : rows) {
        mix.samples.push_back(r.sample);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& s = mix.samples[i];
        if (s.fossil < 0.0 || s.renewable < 0.0) {
            throw ParseError(rows[i].line_no, "negative generation volume");
        }
        if (s.fossil + s.renewable <= 0.0) {
            throw ParseError(rows[i].line_no, "zero total generation (fossil share undefined)");
        }
    }
    validate(mix);
    return mix;
}

GenerationMix parse_generic_mix(std::istream& input) {
    LineReader reader(input);
    std::string line;
    if (!reader.next(line)) {
        throw ParseError("empty input");
    }
    const auto header = split_fields(line, ',');
    if (header.size() < 3 || lower(header[0]) != "timestamp" || lower(header[1]) != "fossil_mwh" ||
        lower(header[2]) != "renewable_mwh") {
        throw ParseError(1, "expected header 'timestamp,fossil_mwh,renewable_mwh'");
    }
    std::vector<MixRow> rows;
    while (reader.next(line)) {
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split_fields(line, ',');
        if (fields.size() != 3) {
            throw ParseError(reader.line_no(),
                             "expected 3 columns, got " + std::to_string(fields.size()));
        }
        UnixTime t = 0;
        try {
            t = parse_rfc3339(fields[0]);
        } catch (const Error& e) {
            throw ParseError(reader.line_no(), std::string("column 'timestamp': ") + e.what());
        }
        MixSample s;
        s.fossil = parse_plain_double(fields[1], reader.line_no(), "fossil_mwh");
        s.renewable = parse_plain_double(fields[2], reader.line_no(), "renewable_mwh");
        rows.push_back({t, s, reader.line_no()});
    }
    return finalize_mix(rows);
}

// Renewables: wind (on/offshore), solar, biomass. Fossil: coal and gas.
// Everything else (hydro, nuclear, storage, "Sonstige") is ignored.
bool is_renewable_column(const std::string& header_lower) {
    return header_lower.find("wind") != std::string::npos ||
           header_lower.find("photovoltaik") != std::string::npos ||
           header_lower.find("solar") != std::string::npos ||
           header_lower.find("biomass") != std::string::npos ||
           header_lower.find("biomasse") != std::string::npos;
}

bool is_fossil_column(const std::string& header_lower) {
    return header_lower.find("kohle") != std::string::npos ||
           header_lower.find("coal") != std::string::npos ||
           header_lower.find("erdgas") != std::string::npos ||
           header_lower.find("gas") != std::string::npos;
}

GenerationMix parse_smard_mix(std::istream& input) {
    LineReader reader(input);
    std::string line;
    if (!reader.next(line)) {
        throw ParseError("empty input");
    }
    const auto header = split_fields(line, ';');
    std::ptrdiff_t time_col = -1;
    std::ptrdiff_t offset_col = -1;
    std::vector<std::size_t> renewable_cols;
    std::vector<std::size_t> fossil_cols;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string h = lower(header[i]);
        if (time_col < 0 && (header[i].find("Datum von") != std::string::npos || h.find("datum") == 0)) {
            time_col = static_cast<std::ptrdiff_t>(i);
            continue;
        }
        if (h.find("offset") != std::string::npos) {
            offset_col = static_cast<std::ptrdiff_t>(i);
            continue;
        }
        if (h.find("datum") != std::string::npos) {
            continue; // "Datum bis"
        }
        if (is_renewable_column(h)) {
            renewable_cols.push_back(i);
        } else if (is_fossil_column(h)) {
            fossil_cols.push_back(i);
        }
    }
    if (time_col < 0) {
        throw ParseError(1, "SMARD header: no 'Datum von' column");
    }
    if (renewable_cols.empty() || fossil_cols.empty()) {
        throw ParseError(1, "SMARD header: no recognizable generation columns "
                            "(need wind/solar/biomass and coal/gas)");
    }
    std::vector<MixRow> rows;
    while (reader.next(line)) {
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split_fields(line, ';');
        if (static_cast<std::size_t>(time_col) >= fields.size()) {
            throw ParseError(reader.line_no(), "row shorter than header");
        }
        std::string stamp = fields[static_cast<std::size_t>(time_col)];
        if (offset_col >= 0 && static_cast<std::size_t>(offset_col) < fields.size()) {
            stamp += " " + fields[static_cast<std::size_t>(offset_col)];
        }
        const UnixTime t = parse_smard_datetime(stamp, reader.line_no(), 3600);
        MixSample s;
        const auto read_cols = [&](const std::vector<std::size_t>& cols) {
            double sum = 0.0;
            for (std::size_t c : cols) {
                if (c >= fields.size()) {
                    throw ParseError(reader.line_no(), "row shorter than header");
                }
                if (fields[c].empty() || fields[c] == "-") {
                    throw ParseError(reader.line_no(), "missing generation sample in column '" +
                                                           header[c] + "'");
                }
                sum += parse_german_double(fields[c], reader.line_no());
            }
            return sum;
        };
        s.renewable = read_cols(renewable_cols);
        s.fossil = read_cols(fossil_cols);
        rows.push_back({t, s, reader.line_no()});
    }
    return finalize_mix(rows);
}

} // namespace

PriceFormat price_format_from_name(std::string_view name) {
    if (name == "generic") return PriceFormat::generic;
    if (name == "smard") return PriceFormat::smard;
    if (name == "aemo") return PriceFormat::aemo;
    throw Error("unknown price format '" + std::string(name) + "' (generic|smard|aemo)");
}

MixFormat mix_format_from_name(std::string_view name) {
    if (name == "generic") return MixFormat::generic;
    if (name == "smard") return MixFormat::smard;
    throw Error("unknown mix format '" + std::string(name) + "' (generic|smard)");
}

PriceSeries parse_prices(std::istream& input, PriceFormat format) {
    switch (format) {
    case PriceFormat::generic:
        return parse_generic_prices(input);
    case PriceFormat::smard:
        return parse_smard_prices(input);
    case PriceFormat::aemo:
        return parse_aemo_prices(input);
    }
    throw Error("unreachable price format");
}

GenerationMix parse_mix(std::istream& input, MixFormat format) {
    switch (format) {
    case MixFormat::generic:
        return parse_generic_mix(input);
    case MixFormat::smard:
        return parse_smard_mix(input);
    }
    throw Error("unreachable mix format");
}

PriceSeries resample(const PriceSeries& series, std::int64_t target_interval) {
    validate(series);
    if (target_interval <= 0 || target_interval % series.interval != 0) {
        throw Error("resample interval " + std::to_string(target_interval) +
                    " s is not a positive multiple of the series interval " +
                    std::to_string(series.interval) + " s");
    }
    const std::size_t window = static_cast<std::size_t>(target_interval / series.interval);
    if (window == 1) {
        return series;
    }
    const std::size_t out_n = series.prices.size() / window;
    if (out_n < 2) {
        throw Error("resampling to " + std::to_string(target_interval) +
                    " s would leave fewer than 2 samples");
    }
    PriceSeries out;
    out.start = series.start;
    out.interval = target_interval;
    out.currency = series.currency;
    out.prices.resize(out_n);
    for (std::size_t w = 0; w < out_n; ++w) {
        double sum = 0.0;
        for (std::size_t j = 0; j < window; ++j) {
            sum += series.prices[w * window + j];
        }
        out.prices[w] = sum / static_cast<double>(window);
    }
    return out;
}

std::string to_generic_csv(const PriceSeries& series) {
    std::string out = "timestamp,price\n";
    for (std::size_t i = 0; i < series.prices.size(); ++i) {
        out += format_rfc3339(series.time_at(i));
        out += ',';
        out += format_double(series.prices[i]);
        out += '\n';
    }
    return out;
}

std::string to_generic_mix_csv(const GenerationMix& mix) {
    std::string out = "timestamp,fossil_mwh,renewable_mwh\n";
    for (std::size_t i = 0; i < mix.samples.size(); ++i) {
        out += format_rfc3339(mix.time_at(i));
        out += ',';
        out += format_double(mix.samples[i].fossil);
        out += ',';
        out += format_double(mix.samples[i].renewable);
        out += '\n';
    }
    return out;
}

std::string to_canonical_json(const PriceSeries& series) {
    nlohmann::json doc;
    doc["interval_s"] = series.interval;
    doc["currency"] = series.currency;
    doc["start"] = format_rfc3339(series.start);
    doc["prices"] = series.prices;
    return doc.dump(2) + "\n";
}

PriceSeries from_canonical_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("bad canonical JSON: ") + e.what());
    }
    PriceSeries series;
    try {
        series.interval = doc.at("interval_s").get<std::int64_t>();
        series.currency = doc.at("currency").get<std::string>();
        series.start = parse_rfc3339(doc.at("start").get<std::string>());
        series.prices = doc.at("prices").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("bad canonical JSON: ") + e.what());
    }
    validate(series);
    return series;
}

PriceSeries load_series(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        throw Error("'" + path.string() + "' is empty");
    }
    if (text[first] == '{') {
        return from_canonical_json(text);
    }
    std::istringstream stream(text);
    return parse_prices(stream, PriceFormat::generic);
}

std::int64_t parse_duration_seconds(std::string_view text) {
    if (text.empty()) {
        throw Error("empty duration");
    }
    std::int64_t factor = 1;
    std::string_view digits = text;
    const char last = text.back();
    if (last == 'h' || last == 'd' || last == 'w') {
        factor = last == 'h' ? 3600 : last == 'd' ? 86400 : 604800;
        digits = text.substr(0, text.size() - 1);
    }
    if (digits.empty()) {
        throw Error("bad duration '" + std::string(text) + "'");
    }
    std::int64_t value = 0;
    for (char c : digits) {
        if (c < '0' || c > '9') {
            throw Error("bad duration '" + std::string(text) +
                        "' (use e.g. 1h, 1d, 1w or seconds)");
        }
        value = value * 10 + (c - '0');
    }
    if (value <= 0) {
        throw Error("duration must be positive");
    }
    return value * factor;
}

} // namespace varcap::ingest
