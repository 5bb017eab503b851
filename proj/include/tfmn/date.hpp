#ifndef TFMN_DATE_HPP
#define TFMN_DATE_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace tfmn {

// UTC calendar day, stored as days since 1970-01-01. Day resolution is the
// finest grouping the toolkit uses anywhere.
struct Date {
    int32_t serial = 0;

    friend constexpr auto operator<=>(Date, Date) = default;

    Date next() const { return Date{serial + 1}; }
};

struct IsoWeek {
    int year = 0;  // ISO week-based year
    int week = 0;  // 1..53

    friend constexpr auto operator<=>(IsoWeek, IsoWeek) = default;
};

Date make_date(int year, int month, int day);

// Parses strict "YYYY-MM-DD". Throws ValidationError on anything else.
Date parse_date(std::string_view text);

std::string format_date(Date d);

// 0 = Monday ... 6 = Sunday.
int weekday(Date d);

// ISO-8601 week (the week containing the first Thursday of the year).
IsoWeek iso_week(Date d);

// Monday of d's ISO week; canonical key for weekly grouping.
Date iso_week_start(Date d);

}  // namespace tfmn

#endif
