#include "tfmn/date.hpp"

#include <cctype>
#include <cstdio>

#include "tfmn/core.hpp"

namespace tfmn {
namespace {

// Proleptic Gregorian civil <-> serial day conversions (era arithmetic).
int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

void civil_from_days(int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int64_t yy = static_cast<int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

bool days_in_month_ok(int y, int m, int d) {
    static constexpr int lengths[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m < 1 || m > 12 || d < 1) return false;
    int len = lengths[m - 1];
    const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    if (m == 2 && leap) len = 29;
    return d <= len;
}

}  // namespace

Date make_date(int year, int month, int day) {
    if (!days_in_month_ok(year, month, day)) {
        throw ValidationError("invalid calendar date " + std::to_string(year) + "-" +
                              std::to_string(month) + "-" + std::to_string(day));
    }
    return Date{static_cast<int32_t>(days_from_civil(year, month, day))};
}

Date parse_date(std::string_view text) {
    const auto bad = [&] {
        throw ValidationError("unparseable date \"" + std::string(text) + "\" (expected YYYY-MM-DD)");
    };
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') bad();
    for (size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) bad();
    }
    const int y = (text[0] - '0') * 1000 + (text[1] - '0') * 100 + (text[2] - '0') * 10 + (text[3] - '0');
    const int m = (text[5] - '0') * 10 + (text[6] - '0');
    const int d = (text[8] - '0') * 10 + (text[9] - '0');
    if (!days_in_month_ok(y, m, d)) bad();
    return Date{static_cast<int32_t>(days_from_civil(y, m, d))};
}

std::string format_date(Date date) {
    int y = 0, m = 0, d = 0;
    civil_from_days(date.serial, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", y, m, d);
    return buf;
}

int weekday(Date d) {
    // 1970-01-01 was a Thursday (weekday 3).
    const int64_t w = (static_cast<int64_t>(d.serial) + 3) % 7;
    return static_cast<int>(w < 0 ? w + 7 : w);
}

Date iso_week_start(Date d) {
    return Date{d.serial - weekday(d)};
}

IsoWeek iso_week(Date d) {
    // The ISO week of d is the week of its Thursday; the Thursday's civil year
    // is the week-based year.
    const Date thursday{iso_week_start(d).serial + 3};
    int y = 0, m = 0, dd = 0;
    civil_from_days(thursday.serial, y, m, dd);
    const Date jan1 = make_date(y, 1, 1);
    const int week = static_cast<int>((thursday.serial - jan1.serial) / 7) + 1;
    return IsoWeek{y, week};
}

}  // namespace tfmn
