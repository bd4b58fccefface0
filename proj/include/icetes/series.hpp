#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "icetes/hourstamp.hpp"

namespace icetes {

struct LoadRecord {
    HourStamp timestamp;
    std::string building_id;
    double cooling_load_kw = 0.0;  // >= 0
};

struct WeatherRecord {
    HourStamp timestamp;
    double temperature_c = 0.0;
    double humidity_pct = 0.0;   // 0..100
    double solar_wm2 = 0.0;      // >= 0
    double wind_ms = 0.0;        // >= 0
};

enum class WeatherProvenance { Historical, Forecast };

// Chronological hourly series. Construction validates record invariants,
// strictly increasing timestamps, and records (but does not fill) gaps:
// downstream training excludes affected samples instead of guessing.
class LoadSeries {
public:
    LoadSeries() = default;
    explicit LoadSeries(std::vector<LoadRecord> records);  // throws ValidationError

    const std::vector<LoadRecord>& records() const { return records_; }
    bool empty() const { return records_.empty(); }
    std::size_t size() const { return records_.size(); }

    // missing hours strictly inside [first, last]
    const std::vector<HourStamp>& gaps() const { return gaps_; }

    std::optional<double> at(HourStamp t) const;
    // contiguous hourly values [from, from+n); nullopt if any hour missing
    std::optional<std::vector<double>> window(HourStamp from, std::size_t n) const;

    LoadSeries slice(HourStamp from, HourStamp to_exclusive) const;
    static LoadSeries merge(const LoadSeries& a, const LoadSeries& b);

private:
    std::vector<LoadRecord> records_;
    std::vector<HourStamp> gaps_;
};

class WeatherSeries {
public:
    WeatherSeries() = default;
    WeatherSeries(std::vector<WeatherRecord> records, WeatherProvenance provenance);

    const std::vector<WeatherRecord>& records() const { return records_; }
    bool empty() const { return records_.empty(); }
    std::size_t size() const { return records_.size(); }
    WeatherProvenance provenance() const { return provenance_; }
    const std::vector<HourStamp>& gaps() const { return gaps_; }

    std::optional<WeatherRecord> at(HourStamp t) const;

private:
    std::vector<WeatherRecord> records_;
    std::vector<HourStamp> gaps_;
    WeatherProvenance provenance_ = WeatherProvenance::Historical;
};

// Weekday coding for the W feature: Monday..Sunday map to 1..7 and any date
// in the holiday set maps to 8 regardless of its weekday.
struct CalendarMark {
    CivilDate date;
    int weekday_code = 0;  // 1..8
};

using HolidaySet = std::set<CivilDate>;

CalendarMark mark_calendar(CivilDate date, const HolidaySet& holidays);

// One date per line, YYYY-MM-DD; '#' starts a comment line.
HolidaySet load_holidays(const std::string& path);

}  // namespace icetes
