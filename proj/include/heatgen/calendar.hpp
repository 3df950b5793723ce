#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace heatgen {

enum class DayType : std::uint8_t { weekday = 0, weekend = 1 };

struct CivilDateTime {
    int year = 1970;
    int month = 1;
    int day = 1;
    int hour = 0;
    int minute = 0;
    int second = 0;

    bool operator==(const CivilDateTime&) const = default;
};

// Accepts "YYYY-MM-DDTHH:MM[:SS]" with 'T' or ' ' as separator and an
// optional trailing 'Z'.
CivilDateTime parse_timestamp(const std::string& text, std::size_t line_no);

std::string format_date(int year, int month, int day);
std::string format_timestamp(const CivilDateTime& dt);

// Days since 1970-01-01 (proleptic Gregorian).
std::int64_t days_from_civil(int year, int month, int day);
void civil_from_days(std::int64_t days, int& year, int& month, int& day);

// 0 = Monday ... 6 = Sunday.
int weekday_from_days(std::int64_t days);

// Hour-indexed calendar derived deterministically from the start timestamp.
// Weekend means Saturday or Sunday; public holidays are not modeled.
class Calendar {
public:
    static Calendar from_start(const CivilDateTime& start, std::size_t hours);

    std::size_t size() const { return hour_of_day_.size(); }
    int hour_of_day(std::size_t t) const { return hour_of_day_[t]; }
    DayType day_type(std::size_t t) const { return day_type_[t]; }
    const CivilDateTime& start() const { return start_; }

    // Date of the day that contains hour index t.
    std::string date_of_hour(std::size_t t) const;

private:
    CivilDateTime start_;
    std::int64_t start_day_ = 0;   // civil day index of hour 0
    int start_hour_ = 0;           // hour of day at hour 0
    std::vector<std::uint8_t> hour_of_day_;
    std::vector<DayType> day_type_;
};

}  // namespace heatgen
