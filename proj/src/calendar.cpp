#include "heatgen/calendar.hpp"

#include <charconv>
#include <cstdio>

#include "heatgen/errors.hpp"

namespace heatgen {
namespace {

int parse_component(const std::string& text, std::size_t pos, std::size_t len,
                    std::size_t line_no) {
    if (pos + len > text.size()) {
        throw InputError("line " + std::to_string(line_no) + ": bad timestamp: '" + text + "'");
    }
    int value = 0;
    const char* begin = text.data() + pos;
    const auto result = std::from_chars(begin, begin + len, value);
    if (result.ec != std::errc() || result.ptr != begin + len) {
        throw InputError("line " + std::to_string(line_no) + ": bad timestamp: '" + text + "'");
    }
    return value;
}

}  // namespace

CivilDateTime parse_timestamp(const std::string& text, std::size_t line_no) {
    // YYYY-MM-DD[T ]HH:MM[:SS][Z]
    if (text.size() < 16) {
        throw InputError("line " + std::to_string(line_no) + ": bad timestamp: '" + text + "'");
    }
    CivilDateTime dt;
    dt.year = parse_component(text, 0, 4, line_no);
    dt.month = parse_component(text, 5, 2, line_no);
    dt.day = parse_component(text, 8, 2, line_no);
    if (text[4] != '-' || text[7] != '-' || (text[10] != 'T' && text[10] != ' ') ||
        text[13] != ':') {
        throw InputError("line " + std::to_string(line_no) + ": bad timestamp: '" + text + "'");
    }
    dt.hour = parse_component(text, 11, 2, line_no);
    dt.minute = parse_component(text, 14, 2, line_no);
    std::size_t tail = 16;
    if (text.size() >= 19 && text[16] == ':') {
        dt.second = parse_component(text, 17, 2, line_no);
        tail = 19;
    }
    if (tail < text.size() && !(tail + 1 == text.size() && text[tail] == 'Z')) {
        throw InputError("line " + std::to_string(line_no) + ": bad timestamp: '" + text + "'");
    }
    if (dt.month < 1 || dt.month > 12 || dt.day < 1 || dt.day > 31 || dt.hour > 23 ||
        dt.minute > 59 || dt.second > 60) {
        throw InputError("line " + std::to_string(line_no) + ": bad timestamp: '" + text + "'");
    }
    return dt;
}

std::string format_date(int year, int month, int day) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return std::string(buf);
}

std::string format_timestamp(const CivilDateTime& dt) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d", dt.year, dt.month, dt.day,
                  dt.hour, dt.minute, dt.second);
    return std::string(buf);
}

std::int64_t days_from_civil(int year, int month, int day) {
    // Howard Hinnant's algorithm.
    year -= month <= 2;
    const std::int64_t era = (year >= 0 ? year : year - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(year - era * 400);
    const unsigned doy =
        static_cast<unsigned>((153 * (month + (month > 2 ? -3 : 9)) + 2) / 5 + day - 1);
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t days, int& year, int& month, int& day) {
    days += 719468;
    const std::int64_t era = (days >= 0 ? days : days - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(days - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    day = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    month = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    year = static_cast<int>(y + (month <= 2));
}

int weekday_from_days(std::int64_t days) {
    // 1970-01-01 was a Thursday (index 3 with Monday = 0).
    return static_cast<int>(((days % 7) + 10) % 7);
}

Calendar Calendar::from_start(const CivilDateTime& start, std::size_t hours) {
    Calendar cal;
    cal.start_ = start;
    cal.start_day_ = days_from_civil(start.year, start.month, start.day);
    cal.start_hour_ = start.hour;
    cal.hour_of_day_.resize(hours);
    cal.day_type_.resize(hours);
    std::int64_t day = cal.start_day_;
    int hod = start.hour;
    bool weekend = weekday_from_days(day) >= 5;
    for (std::size_t t = 0; t < hours; ++t) {
        cal.hour_of_day_[t] = static_cast<std::uint8_t>(hod);
        cal.day_type_[t] = weekend ? DayType::weekend : DayType::weekday;
        if (++hod == 24) {
            hod = 0;
            ++day;
            weekend = weekday_from_days(day) >= 5;
        }
    }
    return cal;
}

std::string Calendar::date_of_hour(std::size_t t) const {
    const std::int64_t total_hours = start_hour_ + static_cast<std::int64_t>(t);
    const std::int64_t day = start_day_ + total_hours / 24;
    int year = 0;
    int month = 0;
    int dom = 0;
    civil_from_days(day, year, month, dom);
    return format_date(year, month, dom);
}

}  // namespace heatgen
