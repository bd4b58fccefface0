#pragma once

#include <memory>
#include <string>
#include <utility>

#include "icetes/series.hpp"

namespace icetes {

// Cooling load from chilled-water measurements:
//   Q [kW] = rho * cp * flow * (return - supply) / 3600
// with fixed water properties rho = 1000 kg/m3, cp = 4.186 kJ/(kg K).
// Inverted temperatures or negative flow signal a sensor fault and raise
// ValidationError.
double compute_cooling_load(double flow_m3h, double supply_c, double return_c);

// Load CSV, header: timestamp,building,cooling_load_kw
// ISO-8601 local timestamps at hour resolution. The file must carry a single
// building. Malformed rows and duplicates report the offending line number.
LoadSeries load_series_from_csv(const std::string& path);

// Weather CSV, header: timestamp,temp_c,rh_pct,solar_wm2,wind_ms
WeatherSeries weather_series_from_csv(const std::string& path,
                                      WeatherProvenance provenance = WeatherProvenance::Historical);

void write_load_csv(const std::string& path, const LoadSeries& series);
void write_weather_csv(const std::string& path, const WeatherSeries& series);

// Hour range [first, last] inclusive.
struct HourRange {
    HourStamp first;
    HourStamp last;
    bool empty() const { return last < first; }
    std::int64_t count() const { return empty() ? 0 : last.hours_since_epoch() - first.hours_since_epoch() + 1; }
};

// Weather source abstraction. The production binding would be an HTTP-JSON
// endpoint (request: hour range + location key; response: hourly records
// plus a provenance tag); only the file-backed stub below ships here.
class WeatherProvider {
public:
    virtual ~WeatherProvider() = default;
    virtual std::string location_key() const = 0;
    // full series as served by the provider; throws ProviderError when the
    // source is unreachable
    virtual WeatherSeries fetch_all() = 0;
};

// Serves a weather CSV from disk. A missing file maps to a retryable
// ProviderError, mirroring an unreachable endpoint.
class FileWeatherProvider : public WeatherProvider {
public:
    FileWeatherProvider(std::string path, std::string location_key,
                        WeatherProvenance provenance = WeatherProvenance::Forecast);
    std::string location_key() const override { return location_; }
    WeatherSeries fetch_all() override;

private:
    std::string path_;
    std::string location_;
    WeatherProvenance provenance_;
};

// One record per hour of `range`; missing hours raise GapError naming them.
// An empty range yields an empty series.
WeatherSeries fetch_weather(WeatherProvider& provider, HourRange range);

// Synthetic season generator. Loads follow a two-peak commercial diurnal
// profile modulated by weekday/holiday factors, a linear weather response,
// a per-day regime factor, and multiplicative noise; weather follows a
// seasonal cycle with day-to-day persistence. Deterministic per seed.
struct SyntheticSeasonConfig {
    CivilDate start{2021, 7, 1};
    CivilDate end{2021, 10, 15};  // inclusive
    std::string building_id = "mall";
    double base_load_kw = 4500.0;

    // weather response: multiplier 1 + temp_coeff*(T - temp_ref) + solar_coeff*(R/800)
    double temp_coeff = 0.03;
    double temp_ref_c = 26.0;
    double solar_coeff = 0.10;

    double weekend_factor = 1.15;
    double holiday_factor = 1.25;

    // per-day latent level factor: exp(N(0, sigma)); drives the day-to-day
    // variability that mid-day observation can recover but day-ahead cannot
    double day_regime_sigma = 0.08;

    double noise_level = 0.03;  // fraction, in [0,1)
    std::uint64_t seed = 1;

    // "two_peak" (commercial diurnal shape) or "flat" (degenerate, for
    // fixtures that need load == base under neutral modulation)
    std::string profile = "two_peak";

    HolidaySet holidays;
};

struct SyntheticSeason {
    LoadSeries loads;
    WeatherSeries weather;
};

SyntheticSeason generate_synthetic_season(const SyntheticSeasonConfig& config);

SyntheticSeasonConfig synthetic_config_from_json_file(const std::string& path);

// Forecast-quality weather: each channel perturbed by noise_level times the
// channel's season-wide standard deviation (humidity clamped to [0,100],
// solar and wind to >= 0). Forecast provenance.
WeatherSeries perturb_weather_forecast(const WeatherSeries& actual, double noise_level,
                                       std::uint64_t seed);

}  // namespace icetes
