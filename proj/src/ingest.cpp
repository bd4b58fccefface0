#include "icetes/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "icetes/csv.hpp"
#include "icetes/errors.hpp"
#include "icetes/rng.hpp"

namespace icetes {

namespace {
constexpr double kWaterDensityKgM3 = 1000.0;
constexpr double kWaterCpKjKgK = 4.186;
}  // namespace

double compute_cooling_load(double flow_m3h, double supply_c, double return_c) {
    if (flow_m3h < 0.0) {
        throw ValidationError("negative chilled water flow (" + std::to_string(flow_m3h) +
                              " m3/h): sensor fault");
    }
    if (return_c < supply_c) {
        throw ValidationError("return temperature below supply (" + std::to_string(return_c) + " < " +
                              std::to_string(supply_c) + "): sensor fault");
    }
    return kWaterDensityKgM3 * kWaterCpKjKgK * flow_m3h * (return_c - supply_c) / 3600.0;
}

LoadSeries load_series_from_csv(const std::string& path) {
    auto rows = csv::read_file(path, {"timestamp", "building", "cooling_load_kw"});
    std::vector<LoadRecord> records;
    records.reserve(rows.size());
    std::string building;
    for (const auto& row : rows) {
        LoadRecord rec;
        try {
            rec.timestamp = HourStamp::parse(row.fields[0]);
        } catch (const ValidationError& e) {
            throw ValidationError(path + ":" + std::to_string(row.line_number) + ": " + e.what());
        }
        rec.building_id = row.fields[1];
        rec.cooling_load_kw = csv::parse_double(row, 2, path);
        if (rec.cooling_load_kw < 0.0) {
            throw ValidationError(path + ":" + std::to_string(row.line_number) +
                                  ": negative cooling load");
        }
        if (building.empty()) {
            building = rec.building_id;
        } else if (rec.building_id != building) {
            throw ValidationError(path + ":" + std::to_string(row.line_number) +
                                  ": mixed buildings in one file ('" + building + "' vs '" +
                                  rec.building_id + "')");
        }
        records.push_back(std::move(rec));
    }
    try {
        return LoadSeries(std::move(records));
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

WeatherSeries weather_series_from_csv(const std::string& path, WeatherProvenance provenance) {
    auto rows = csv::read_file(path, {"timestamp", "temp_c", "rh_pct", "solar_wm2", "wind_ms"});
    std::vector<WeatherRecord> records;
    records.reserve(rows.size());
    for (const auto& row : rows) {
        WeatherRecord rec;
        try {
            rec.timestamp = HourStamp::parse(row.fields[0]);
        } catch (const ValidationError& e) {
            throw ValidationError(path + ":" + std::to_string(row.line_number) + ": " + e.what());
        }
        rec.temperature_c = csv::parse_double(row, 1, path);
        rec.humidity_pct = csv::parse_double(row, 2, path);
        rec.solar_wm2 = csv::parse_double(row, 3, path);
        rec.wind_ms = csv::parse_double(row, 4, path);
        records.push_back(rec);
    }
    try {
        return WeatherSeries(std::move(records), provenance);
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void write_load_csv(const std::string& path, const LoadSeries& series) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << "timestamp,building,cooling_load_kw\n";
    char buf[64];
    for (const auto& r : series.records()) {
        std::snprintf(buf, sizeof buf, "%.3f", r.cooling_load_kw);
        out << r.timestamp.to_string() << ',' << r.building_id << ',' << buf << '\n';
    }
}

void write_weather_csv(const std::string& path, const WeatherSeries& series) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << "timestamp,temp_c,rh_pct,solar_wm2,wind_ms\n";
    char buf[128];
    for (const auto& r : series.records()) {
        std::snprintf(buf, sizeof buf, "%.3f,%.3f,%.3f,%.3f", r.temperature_c, r.humidity_pct,
                      r.solar_wm2, r.wind_ms);
        out << r.timestamp.to_string() << ',' << buf << '\n';
    }
}

FileWeatherProvider::FileWeatherProvider(std::string path, std::string location_key,
                                         WeatherProvenance provenance)
    : path_(std::move(path)), location_(std::move(location_key)), provenance_(provenance) {}

WeatherSeries FileWeatherProvider::fetch_all() {
    if (!std::filesystem::exists(path_)) {
        throw ProviderError("weather provider source '" + path_ + "' unavailable", /*retryable=*/true);
    }
    return weather_series_from_csv(path_, provenance_);
}

WeatherSeries fetch_weather(WeatherProvider& provider, HourRange range) {
    if (range.empty()) return WeatherSeries({}, WeatherProvenance::Forecast);
    WeatherSeries all = provider.fetch_all();
    std::vector<WeatherRecord> out;
    std::vector<std::string> missing;
    out.reserve(std::size_t(range.count()));
    for (auto t = range.first; t <= range.last; t = t.plus_hours(1)) {
        auto rec = all.at(t);
        if (rec) {
            out.push_back(*rec);
        } else {
            missing.push_back(t.to_string());
        }
    }
    if (!missing.empty()) {
        std::string msg = "weather provider '" + provider.location_key() + "' missing " +
                          std::to_string(missing.size()) + " hour(s):";
        for (const auto& m : missing) msg += " " + m;
        throw GapError(msg, std::move(missing));
    }
    return WeatherSeries(std::move(out), all.provenance());
}

namespace {

// hour-of-day shape, commercial complex: low overnight, morning ramp,
// late-morning peak, mid-afternoon trough, second peak before the evening
// decline
constexpr double kTwoPeakProfile[24] = {
    0.20, 0.19, 0.18, 0.18, 0.18, 0.19, 0.22, 0.35, 0.55, 0.75, 0.92, 1.00,
    0.97, 0.90, 0.88, 0.90, 0.95, 0.92, 0.85, 0.78, 0.68, 0.55, 0.38, 0.25};

double clamp(double v, double lo, double hi) { return std::min(hi, std::max(lo, v)); }

}  // namespace

SyntheticSeason generate_synthetic_season(const SyntheticSeasonConfig& config) {
    if (config.noise_level < 0.0 || config.noise_level >= 1.0) {
        throw ConfigError("synthetic config: noise_level must be in [0,1)");
    }
    if (config.end < config.start) throw ConfigError("synthetic config: end before start");
    if (config.profile != "two_peak" && config.profile != "flat") {
        throw ConfigError("synthetic config: profile must be 'two_peak' or 'flat'");
    }
    const bool flat = config.profile == "flat";
    const int n_days = config.start.days_until(config.end) + 1;

    Rng rng(config.seed);
    std::vector<LoadRecord> loads;
    std::vector<WeatherRecord> weather;
    loads.reserve(std::size_t(n_days) * 24);
    weather.reserve(std::size_t(n_days) * 24);

    double temp_ar = 0.0;  // day-to-day temperature persistence
    for (int d = 0; d < n_days; ++d) {
        CivilDate date = config.start.plus_days(d);
        CalendarMark mark = mark_calendar(date, config.holidays);

        temp_ar = 0.7 * temp_ar + rng.normal(0.0, 1.5);
        const double season_frac = n_days > 1 ? double(d) / double(n_days - 1) : 0.0;
        const double day_mean_t = 28.5 - 12.0 * season_frac + temp_ar;
        const double cloud = clamp(rng.normal(0.0, 0.6), -1.0, 1.0);
        const double regime =
            config.day_regime_sigma > 0.0 ? std::exp(rng.normal(0.0, config.day_regime_sigma)) : 1.0;

        double week_factor = 1.0;
        if (mark.weekday_code == 8) week_factor = config.holiday_factor;
        else if (mark.weekday_code >= 6) week_factor = config.weekend_factor;

        for (int h = 0; h < 24; ++h) {
            WeatherRecord w;
            w.timestamp = HourStamp(date, h);
            w.temperature_c = day_mean_t + 4.0 * std::cos(2.0 * M_PI * (h - 14) / 24.0) +
                              rng.normal(0.0, 0.3);
            w.humidity_pct = clamp(70.0 - 0.8 * (w.temperature_c - 26.0) + rng.normal(0.0, 3.0), 20.0, 100.0);
            const double daylight = (h >= 6 && h <= 19) ? std::sin(M_PI * (h - 6) / 13.0) : 0.0;
            w.solar_wm2 = std::max(0.0, daylight * (700.0 + 150.0 * cloud) + rng.normal(0.0, 10.0) * (daylight > 0 ? 1.0 : 0.0));
            w.wind_ms = std::max(0.0, 2.0 + 1.2 * rng.normal());
            weather.push_back(w);

            const double shape = flat ? 1.0 : kTwoPeakProfile[h];
            const double response = 1.0 + config.temp_coeff * (w.temperature_c - config.temp_ref_c) +
                                    config.solar_coeff * (w.solar_wm2 / 800.0);
            const double noise = config.noise_level > 0.0
                                     ? 1.0 + config.noise_level * clamp(rng.normal(), -3.0, 3.0)
                                     : 1.0;
            LoadRecord r;
            r.timestamp = w.timestamp;
            r.building_id = config.building_id;
            r.cooling_load_kw =
                std::max(0.0, config.base_load_kw * shape * week_factor * std::max(0.0, response) *
                                  regime * noise);
            loads.push_back(std::move(r));
        }
    }
    return SyntheticSeason{LoadSeries(std::move(loads)),
                           WeatherSeries(std::move(weather), WeatherProvenance::Historical)};
}

SyntheticSeasonConfig synthetic_config_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open synthetic config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    SyntheticSeasonConfig c;
    try {
        if (j.contains("start")) c.start = CivilDate::parse(j["start"].get<std::string>());
        if (j.contains("end")) c.end = CivilDate::parse(j["end"].get<std::string>());
        c.building_id = j.value("building_id", c.building_id);
        c.base_load_kw = j.value("base_load_kw", c.base_load_kw);
        c.temp_coeff = j.value("temp_coeff", c.temp_coeff);
        c.temp_ref_c = j.value("temp_ref_c", c.temp_ref_c);
        c.solar_coeff = j.value("solar_coeff", c.solar_coeff);
        c.weekend_factor = j.value("weekend_factor", c.weekend_factor);
        c.holiday_factor = j.value("holiday_factor", c.holiday_factor);
        c.day_regime_sigma = j.value("day_regime_sigma", c.day_regime_sigma);
        c.noise_level = j.value("noise_level", c.noise_level);
        c.seed = j.value("seed", c.seed);
        c.profile = j.value("profile", c.profile);
        if (j.contains("holidays_file") && !j["holidays_file"].is_null()) {
            std::filesystem::path hp = j["holidays_file"].get<std::string>();
            if (hp.is_relative()) hp = std::filesystem::path(path).parent_path() / hp;
            c.holidays = load_holidays(hp.string());
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return c;
}

WeatherSeries perturb_weather_forecast(const WeatherSeries& actual, double noise_level,
                                       std::uint64_t seed) {
    const auto& recs = actual.records();
    if (recs.empty() || noise_level <= 0.0) {
        return WeatherSeries(recs, WeatherProvenance::Forecast);
    }
    // per-channel standard deviation sets the perturbation scale
    auto stddev_of = [&](auto get) {
        double mean = 0.0;
        for (const auto& r : recs) mean += get(r);
        mean /= double(recs.size());
        double var = 0.0;
        for (const auto& r : recs) {
            double d = get(r) - mean;
            var += d * d;
        }
        return std::sqrt(var / double(recs.size()));
    };
    const double s_t = stddev_of([](const WeatherRecord& r) { return r.temperature_c; });
    const double s_h = stddev_of([](const WeatherRecord& r) { return r.humidity_pct; });
    const double s_r = stddev_of([](const WeatherRecord& r) { return r.solar_wm2; });
    const double s_w = stddev_of([](const WeatherRecord& r) { return r.wind_ms; });

    Rng rng(mix_seed(seed, 0xFC));
    std::vector<WeatherRecord> out = recs;
    for (auto& r : out) {
        r.temperature_c += noise_level * s_t * rng.normal();
        r.humidity_pct = clamp(r.humidity_pct + noise_level * s_h * rng.normal(), 0.0, 100.0);
        r.solar_wm2 = std::max(0.0, r.solar_wm2 + noise_level * s_r * rng.normal());
        r.wind_ms = std::max(0.0, r.wind_ms + noise_level * s_w * rng.normal());
    }
    return WeatherSeries(std::move(out), WeatherProvenance::Forecast);
}

}  // namespace icetes
