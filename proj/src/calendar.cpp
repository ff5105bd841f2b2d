#include "gwts/calendar.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace gwts {

Date parse_iso_date(const std::string& text) {
    const auto fail = [&] { throw InputError("invalid ISO-8601 date: '" + text + "'"); };
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') fail();
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail();
    }
    Date d;
    std::from_chars(text.data(), text.data() + 4, d.year);
    std::from_chars(text.data() + 5, text.data() + 7, d.month);
    std::from_chars(text.data() + 8, text.data() + 10, d.day);
    if (!is_valid_date(d)) fail();
    return d;
}

std::string format_iso_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

}  // namespace gwts
