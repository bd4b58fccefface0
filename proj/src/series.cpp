#include "icetes/series.hpp"

#include <algorithm>
#include <fstream>

#include "icetes/errors.hpp"

namespace icetes {

namespace {

template <typename Rec>
std::vector<HourStamp> find_gaps(const std::vector<Rec>& records) {
    std::vector<HourStamp> gaps;
    for (std::size_t i = 1; i < records.size(); ++i) {
        auto prev = records[i - 1].timestamp;
        auto cur = records[i].timestamp;
        for (auto t = prev.plus_hours(1); t < cur; t = t.plus_hours(1)) gaps.push_back(t);
    }
    return gaps;
}

template <typename Rec>
void check_order(const std::vector<Rec>& records, const char* what) {
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].timestamp == records[i - 1].timestamp) {
            throw ValidationError(std::string(what) + ": duplicate timestamp " +
                                  records[i].timestamp.to_string());
        }
        if (records[i].timestamp < records[i - 1].timestamp) {
            throw ValidationError(std::string(what) + ": timestamps not increasing at " +
                                  records[i].timestamp.to_string());
        }
    }
}

template <typename Rec>
const Rec* lookup(const std::vector<Rec>& records, HourStamp t) {
    auto it = std::lower_bound(records.begin(), records.end(), t,
                               [](const Rec& r, HourStamp ts) { return r.timestamp < ts; });
    if (it == records.end() || it->timestamp != t) return nullptr;
    return &*it;
}

}  // namespace

LoadSeries::LoadSeries(std::vector<LoadRecord> records) : records_(std::move(records)) {
    check_order(records_, "load series");
    for (const auto& r : records_) {
        if (r.cooling_load_kw < 0.0) {
            throw ValidationError("load series: negative cooling load at " + r.timestamp.to_string());
        }
    }
    gaps_ = find_gaps(records_);
}

std::optional<double> LoadSeries::at(HourStamp t) const {
    const LoadRecord* r = lookup(records_, t);
    if (!r) return std::nullopt;
    return r->cooling_load_kw;
}

std::optional<std::vector<double>> LoadSeries::window(HourStamp from, std::size_t n) const {
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto v = at(from.plus_hours(std::int64_t(i)));
        if (!v) return std::nullopt;
        out.push_back(*v);
    }
    return out;
}

LoadSeries LoadSeries::slice(HourStamp from, HourStamp to_exclusive) const {
    std::vector<LoadRecord> out;
    for (const auto& r : records_) {
        if (r.timestamp >= from && r.timestamp < to_exclusive) out.push_back(r);
    }
    return LoadSeries(std::move(out));
}

LoadSeries LoadSeries::merge(const LoadSeries& a, const LoadSeries& b) {
    std::vector<LoadRecord> all = a.records_;
    all.insert(all.end(), b.records_.begin(), b.records_.end());
    std::sort(all.begin(), all.end(),
              [](const LoadRecord& x, const LoadRecord& y) { return x.timestamp < y.timestamp; });
    return LoadSeries(std::move(all));  // duplicate timestamps rejected there
}

WeatherSeries::WeatherSeries(std::vector<WeatherRecord> records, WeatherProvenance provenance)
    : records_(std::move(records)), provenance_(provenance) {
    check_order(records_, "weather series");
    for (const auto& r : records_) {
        if (r.humidity_pct < 0.0 || r.humidity_pct > 100.0)
            throw ValidationError("weather series: humidity outside [0,100] at " + r.timestamp.to_string());
        if (r.solar_wm2 < 0.0)
            throw ValidationError("weather series: negative solar at " + r.timestamp.to_string());
        if (r.wind_ms < 0.0)
            throw ValidationError("weather series: negative wind speed at " + r.timestamp.to_string());
    }
    gaps_ = find_gaps(records_);
}

std::optional<WeatherRecord> WeatherSeries::at(HourStamp t) const {
    const WeatherRecord* r = lookup(records_, t);
    if (!r) return std::nullopt;
    return *r;
}

CalendarMark mark_calendar(CivilDate date, const HolidaySet& holidays) {
    if (holidays.count(date)) return {date, 8};
    return {date, date.weekday_iso()};
}

HolidaySet load_holidays(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open holiday file '" + path + "'");
    HolidaySet out;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto b = line.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r\n");
        try {
            out.insert(CivilDate::parse(line.substr(b, e - b + 1)));
        } catch (const ValidationError& err) {
            throw ValidationError(path + ":" + std::to_string(line_number) + ": " + err.what());
        }
    }
    return out;
}

}  // namespace icetes
