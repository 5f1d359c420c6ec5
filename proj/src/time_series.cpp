#include "varcap/time_series.hpp"

#include "varcap/error.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace varcap {

namespace {

constexpr std::int64_t seconds_per_day = 86400;

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (c < '0' || c > '9') {
            return false;
        }
    }
    return true;
}

int to_int(std::string_view s) {
    int v = 0;
    for (char c : s) {
        v = v * 10 + (c - '0');
    }
    return v;
}

} // namespace

std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& year, unsigned& month, unsigned& day) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    day = doy - (153 * mp + 2) / 5 + 1;
    month = mp + (mp < 10 ? 3 : -9);
    year = static_cast<int>(y + (month <= 2));
}

std::string format_rfc3339(UnixTime t) {
    std::int64_t days = t / seconds_per_day;
    std::int64_t rem = t % seconds_per_day;
    if (rem < 0) {
        rem += seconds_per_day;
        days -= 1;
    }
    int year = 0;
    unsigned month = 0;
    unsigned day = 0;
    civil_from_days(days, year, month, day);
    const int hh = static_cast<int>(rem / 3600);
    const int mm = static_cast<int>((rem / 60) % 60);
    const int ss = static_cast<int>(rem % 60);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ", year, month, day, hh, mm, ss);
    return buf;
}

UnixTime parse_rfc3339(std::string_view text) {
    // YYYY-MM-DD{T| }HH:MM[:SS[.frac]]{Z|+HH:MM|-HH:MM}
    const auto fail = [&](const std::string& why) -> UnixTime {
        throw Error("bad timestamp '" + std::string(text) + "': " + why);
    };
    if (text.size() < 17) {
        fail("too short");
    }
    if (text[4] != '-' || text[7] != '-') {
        fail("expected YYYY-MM-DD");
    }
    const std::string_view ys = text.substr(0, 4);
    const std::string_view mos = text.substr(5, 2);
    const std::string_view ds = text.substr(8, 2);
    if (!all_digits(ys) || !all_digits(mos) || !all_digits(ds)) {
        fail("non-numeric date");
    }
    const char sep = text[10];
    if (sep != 'T' && sep != 't' && sep != ' ') {
        fail("expected 'T' date/time separator");
    }
    if (text.size() < 16 || text[13] != ':') {
        fail("expected HH:MM");
    }
    const std::string_view hs = text.substr(11, 2);
    const std::string_view mins = text.substr(14, 2);
    if (!all_digits(hs) || !all_digits(mins)) {
        fail("non-numeric time");
    }
    std::size_t pos = 16;
    int seconds = 0;
    if (pos < text.size() && text[pos] == ':') {
        if (pos + 3 > text.size() || !all_digits(text.substr(pos + 1, 2))) {
            fail("bad seconds field");
        }
        seconds = to_int(text.substr(pos + 1, 2));
        pos += 3;
    }
    if (pos < text.size() && text[pos] == '.') {
        const std::size_t frac_start = ++pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            if (text[pos] != '0') {
                fail("fractional seconds are not supported");
            }
            ++pos;
        }
        if (pos == frac_start) {
            fail("empty fractional part");
        }
    }
    if (pos >= text.size()) {
        fail("missing UTC offset");
    }
    std::int64_t offset = 0;
    const char oc = text[pos];
    if (oc == 'Z' || oc == 'z') {
        if (pos + 1 != text.size()) {
            fail("trailing characters");
        }
    } else if (oc == '+' || oc == '-') {
        if (pos + 6 != text.size() || text[pos + 3] != ':' ||
            !all_digits(text.substr(pos + 1, 2)) || !all_digits(text.substr(pos + 4, 2))) {
            fail("bad UTC offset");
        }
        offset = to_int(text.substr(pos + 1, 2)) * 3600 + to_int(text.substr(pos + 4, 2)) * 60;
        if (oc == '-') {
            offset = -offset;
        }
    } else {
        fail("bad UTC offset");
    }

    const int year = to_int(ys);
    const unsigned month = static_cast<unsigned>(to_int(mos));
    const unsigned day = static_cast<unsigned>(to_int(ds));
    const int hour = to_int(hs);
    const int minute = to_int(mins);
    if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59 || seconds > 60) {
        fail("field out of range");
    }
    const std::int64_t days = days_from_civil(year, month, day);
    return days * seconds_per_day + hour * 3600 + minute * 60 + seconds - offset;
}

void validate(const PriceSeries& series) {
    if (series.interval <= 0) {
        throw Error("price series interval must be positive");
    }
    if (series.prices.size() < 2) {
        throw Error("price series needs at least 2 samples, got " +
                    std::to_string(series.prices.size()));
    }
    for (std::size_t i = 0; i < series.prices.size(); ++i) {
        if (!std::isfinite(series.prices[i])) {
            throw Error("non-finite price at sample " + std::to_string(i));
        }
    }
}

double mean_price(const PriceSeries& series) {
    double sum = 0.0;
    for (double p : series.prices) {
        sum += p;
    }
    return sum / static_cast<double>(series.prices.size());
}

void validate(const GenerationMix& mix) {
    if (mix.interval <= 0) {
        throw Error("generation mix interval must be positive");
    }
    if (mix.samples.empty()) {
        throw Error("generation mix is empty");
    }
    for (std::size_t i = 0; i < mix.samples.size(); ++i) {
        const auto& s = mix.samples[i];
        if (!std::isfinite(s.fossil) || !std::isfinite(s.renewable)) {
            throw Error("non-finite generation volume at sample " + std::to_string(i));
        }
        if (s.fossil < 0.0 || s.renewable < 0.0) {
            throw Error("negative generation volume at sample " + std::to_string(i));
        }
        if (s.fossil + s.renewable <= 0.0) {
            throw Error("zero total generation at sample " + std::to_string(i) +
                        " (fossil share undefined)");
        }
    }
}

} // namespace varcap
