#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <string>

namespace icetes {

// Plain civil date. Calendar math goes through std::chrono; this struct is
// the serialization-friendly form used in configs and file formats.
struct CivilDate {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31

    auto operator<=>(const CivilDate&) const = default;

    std::chrono::year_month_day to_ymd() const {
        return std::chrono::year{year} / month / day;
    }
    static CivilDate from_ymd(std::chrono::year_month_day ymd) {
        return {int(ymd.year()), int(unsigned(ymd.month())), int(unsigned(ymd.day()))};
    }
    // ISO weekday, Monday=1 .. Sunday=7
    int weekday_iso() const {
        std::chrono::weekday wd{std::chrono::sys_days(to_ymd())};
        return static_cast<int>(wd.iso_encoding());
    }
    CivilDate plus_days(int n) const {
        auto d = std::chrono::sys_days(to_ymd()) + std::chrono::days{n};
        return from_ymd(std::chrono::year_month_day{d});
    }
    int days_until(const CivilDate& other) const {
        return int((std::chrono::sys_days(other.to_ymd()) - std::chrono::sys_days(to_ymd())).count());
    }

    std::string to_string() const;                     // "YYYY-MM-DD"
    static CivilDate parse(const std::string& text);   // throws ValidationError
};

// Hour-resolution civil timestamp, stored as whole hours since
// 1970-01-01T00:00 civil time. All series in this project are naive local
// time at hour resolution; there is no timezone handling by design.
class HourStamp {
public:
    HourStamp() = default;
    explicit HourStamp(std::int64_t hours_since_epoch) : h_(hours_since_epoch) {}
    HourStamp(CivilDate date, int hour_of_day)
        : h_(std::chrono::sys_days(date.to_ymd()).time_since_epoch().count() * 24 + hour_of_day) {}

    std::int64_t hours_since_epoch() const { return h_; }
    CivilDate date() const {
        std::int64_t d = (h_ >= 0) ? h_ / 24 : (h_ - 23) / 24;
        return CivilDate::from_ymd(std::chrono::year_month_day{
            std::chrono::sys_days{std::chrono::days{d}}});
    }
    int hour_of_day() const {
        std::int64_t r = h_ % 24;
        return int(r < 0 ? r + 24 : r);
    }
    int month() const { return date().month; }
    int weekday_iso() const { return date().weekday_iso(); }

    HourStamp plus_hours(std::int64_t n) const { return HourStamp{h_ + n}; }
    HourStamp minus_hours(std::int64_t n) const { return HourStamp{h_ - n}; }

    auto operator<=>(const HourStamp&) const = default;

    std::string to_string() const;                     // "YYYY-MM-DDTHH:00:00"
    // Accepts "YYYY-MM-DDTHH:MM[:SS]" (minutes/seconds must be zero) and
    // "YYYY-MM-DD HH:MM[:SS]". Throws ValidationError on anything else.
    static HourStamp parse(const std::string& text);

private:
    std::int64_t h_ = 0;
};

}  // namespace icetes
