#pragma once

#include <cstdint>
#include <string>

#include "gwts/error.hpp"

namespace gwts {

/// Proleptic Gregorian calendar date.
struct Date {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31

    friend bool operator==(const Date&, const Date&) = default;
};

constexpr bool is_leap_year(int y) noexcept {
    return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0);
}

/// Days since 1970-01-01 (Howard Hinnant's civil-days algorithm).
constexpr std::int64_t days_from_civil(int y, int m, int d) noexcept {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

constexpr Date civil_from_days(std::int64_t z) noexcept {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

constexpr std::int64_t to_day_number(const Date& d) noexcept {
    return days_from_civil(d.year, d.month, d.day);
}

constexpr Date add_days(const Date& d, std::int64_t n) noexcept {
    return civil_from_days(to_day_number(d) + n);
}

/// Calendar day of year, 1..365 (366 in leap years).
constexpr int day_of_year(const Date& d) noexcept {
    constexpr int cum[12] = {0, 31, 59, 90, 120, 151, 181, 212, 243, 273, 304, 334};
    int doy = cum[d.month - 1] + d.day;
    if (d.month > 2 && is_leap_year(d.year)) ++doy;
    return doy;
}

constexpr bool is_valid_date(const Date& d) noexcept {
    if (d.month < 1 || d.month > 12 || d.day < 1) return false;
    constexpr int mdays[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int dim = mdays[d.month - 1];
    if (d.month == 2 && is_leap_year(d.year)) dim = 29;
    return d.day <= dim;
}

/// Parses a strict ISO-8601 calendar date "YYYY-MM-DD".
Date parse_iso_date(const std::string& text);

/// Formats as "YYYY-MM-DD".
std::string format_iso_date(const Date& d);

}  // namespace gwts
