#pragma once

#include <array>
#include <functional>
#include <vector>

#include "icetes/pipeline.hpp"
#include "icetes/rng.hpp"
#include "icetes/series.hpp"

namespace icetes::testfix {

// hour-of-day load shape used by the hand-built fixtures (kW multiplier)
inline double pattern(int h) {
    static constexpr double shape[24] = {0.20, 0.19, 0.18, 0.18, 0.18, 0.19, 0.22, 0.35,
                                         0.55, 0.75, 0.92, 1.00, 0.97, 0.90, 0.88, 0.90,
                                         0.95, 0.92, 0.85, 0.78, 0.68, 0.55, 0.38, 0.25};
    return 3500.0 * shape[h];
}

inline LoadSeries make_loads(CivilDate start, int n_days,
                             const std::function<double(int day, int hour)>& fn,
                             const std::string& building = "mall") {
    std::vector<LoadRecord> recs;
    for (int d = 0; d < n_days; ++d) {
        for (int h = 0; h < 24; ++h) {
            recs.push_back({HourStamp(start.plus_days(d), h), building, fn(d, h)});
        }
    }
    return LoadSeries(std::move(recs));
}

inline WeatherSeries make_weather(CivilDate start, int n_days,
                                  const std::function<double(int day, int hour)>& temp_fn) {
    std::vector<WeatherRecord> recs;
    for (int d = 0; d < n_days; ++d) {
        for (int h = 0; h < 24; ++h) {
            WeatherRecord w;
            w.timestamp = HourStamp(start.plus_days(d), h);
            w.temperature_c = temp_fn(d, h);
            w.humidity_pct = 60.0;
            w.solar_wm2 = (h >= 6 && h <= 19) ? 500.0 : 0.0;
            w.wind_ms = 2.0;
            recs.push_back(w);
        }
    }
    return WeatherSeries(std::move(recs), WeatherProvenance::Historical);
}

// Stationary day-to-day repetition of pattern() with flat weather.
inline PipelineDataset stationary_dataset(CivilDate start, int n_days) {
    PipelineDataset data;
    data.loads = make_loads(start, n_days, [](int, int h) { return pattern(h); });
    data.weather = make_weather(start, n_days, [](int, int) { return 28.0; });
    return data;
}

// History with a per-day latent level factor rho_d (lognormal, seeded) that
// the day-ahead view cannot predict, plus one evaluation day whose level
// jumps +50% from 6:00 onward. Total days = n_history + 1.
struct RegimeShiftFixture {
    PipelineDataset data;
    CivilDate eval_date;
    std::array<double, 24> eval_actual;
};

inline RegimeShiftFixture regime_shift_fixture(CivilDate start, int n_history,
                                               std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> rho;
    for (int d = 0; d < n_history; ++d) rho.push_back(std::exp(rng.normal(0.0, 0.2)));

    RegimeShiftFixture fx;
    fx.eval_date = start.plus_days(n_history);
    fx.data.loads = make_loads(start, n_history + 1, [&](int d, int h) {
        if (d < n_history) return rho[std::size_t(d)] * pattern(h);
        return (h < 6 ? 1.0 : 1.5) * pattern(h);  // regime shift at 6:00
    });
    fx.data.weather = make_weather(start, n_history + 1, [](int, int) { return 28.0; });
    for (int h = 0; h < 24; ++h) fx.eval_actual[std::size_t(h)] = (h < 6 ? 1.0 : 1.5) * pattern(h);
    return fx;
}

}  // namespace icetes::testfix
