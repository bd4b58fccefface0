#include "icetes/pipeline.hpp"

#include <fstream>

#include <json.hpp>

#include "icetes/errors.hpp"
#include "icetes/rng.hpp"

namespace icetes {

MiddayPlanSpec MiddayPlanSpec::midday24() {
    MiddayPlanSpec spec;
    spec.variant = "mid-day24";
    for (int h = 0; h < 24; ++h) spec.hours.insert(h);
    return spec;
}

MiddayPlanSpec MiddayPlanSpec::from_name(const std::string& name) {
    if (name == "day-ahead") return day_ahead();
    if (name == "mid-day6") return midday6();
    if (name == "mid-day24") return midday24();
    throw ConfigError("unknown predictor variant '" + name +
                      "' (expected day-ahead, mid-day6 or mid-day24)");
}

int MiddayPlanSpec::anchor_begin(int timepoint) const {
    int begin = 0;
    for (int h : hours) {
        if (h < timepoint) begin = h;
    }
    return begin;
}

void PipelineConfig::validate() const {
    if (!algorithm_known(algorithm)) throw ConfigError("unknown algorithm '" + algorithm + "'");
    if (history_days != 7 && history_days != 14 && history_days != 30 && history_days != 60)
        throw ConfigError("history_days must be one of 7, 14, 30, 60");
    if (window_days != 1 && window_days != 7 && window_days != 30)
        throw ConfigError("window_days must be one of 1, 7, 30");
    if (no_info_tolerance < 0.0) throw ConfigError("no_info_tolerance must be >= 0");
}

PipelineConfig PipelineConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open pipeline config '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json_text(text, path);
}

PipelineConfig PipelineConfig::from_json_text(const std::string& text, const std::string& origin) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    PipelineConfig c;
    try {
        c.algorithm = j.value("algorithm", c.algorithm);
        if (j.contains("mask")) c.mask = FeatureMask::parse(j["mask"].get<std::string>());
        c.history_days = j.value("history_days", c.history_days);
        c.window_days = j.value("window_days", c.window_days);
        if (j.contains("midday")) c.midday = MiddayPlanSpec::from_name(j["midday"].get<std::string>());
        c.seed = j.value("seed", c.seed);
        c.no_info_tolerance = j.value("no_info_tolerance", c.no_info_tolerance);
        if (j.contains("params")) {
            for (const auto& [key, value] : j["params"].items()) {
                if (value.is_string()) c.params.set(key, value.get<std::string>());
                else c.params.set(key, value.get<double>());
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    c.validate();
    return c;
}

ForecastPipeline::ForecastPipeline(PipelineConfig config) : config_(std::move(config)) {
    config_.validate();
}

namespace {

// anchored rows for the days [first, last]: targets from `timepoint` to end
// of day, anchor = mean load over [anchor_begin, timepoint) of the same day
SampleSet build_anchored_samples(const LoadSeries& loads, const WeatherSeries& weather,
                                 const HolidaySet& holidays, CivilDate first, CivilDate last,
                                 int anchor_begin, int timepoint) {
    SampleSet out;
    out.with_anchor = true;
    const FeatureMask all = FeatureMask::from_bits((1u << kMaskFeatureCount) - 1);
    for (CivilDate day = first; day <= last; day = day.plus_days(1)) {
        AnchorWindow window{HourStamp(day, anchor_begin), HourStamp(day, timepoint)};
        const auto n_window = std::size_t(window.end_exclusive.hours_since_epoch() -
                                          window.begin.hours_since_epoch());
        if (!loads.window(window.begin, n_window)) continue;  // incomplete window: skip day
        for (int h = timepoint; h < 24; ++h) {
            HourStamp t(day, h);
            auto target = loads.at(t);
            if (!target || !weather.at(t) || !loads.at(t.minus_hours(24))) continue;
            auto fv = assemble_features(loads, weather, holidays, all, t, window);
            out.rows.push_back(fv.values);
            out.targets.push_back(*target);
            out.timestamps.push_back(t);
        }
    }
    return out;
}

}  // namespace

TrainedModel ForecastPipeline::train_window(const PipelineDataset& data, CivilDate date,
                                            bool with_anchor, int anchor_begin, int timepoint,
                                            const LoadSeries* observed_today) {
    const CivilDate window_start = date.plus_days(-config_.history_days);
    const HourStamp begin(window_start, 0);
    const HourStamp end(date, 0);

    // history must actually cover the window (minus the first day, which
    // only feeds the L lag of the next one)
    if (data.loads.empty() ||
        data.loads.records().front().timestamp > begin.plus_hours(24) ||
        data.loads.records().back().timestamp < end.minus_hours(1)) {
        throw ValidationError("history does not cover the " + std::to_string(config_.history_days) +
                              "-day training window " + begin.to_string() + " .. " + end.to_string());
    }

    SampleSet samples;
    if (with_anchor) {
        samples = build_anchored_samples(data.loads, data.weather, data.holidays, window_start,
                                         date.plus_days(-1), anchor_begin, timepoint);
        if (observed_today) {
            // today's observed hours as extra rows, anchored on today's window
            AnchorWindow window{HourStamp(date, anchor_begin), HourStamp(date, timepoint)};
            const FeatureMask all = FeatureMask::from_bits((1u << kMaskFeatureCount) - 1);
            LoadSeries merged = LoadSeries::merge(data.loads.slice(begin, HourStamp(date, 0)),
                                                  *observed_today);
            for (int h = 0; h < timepoint; ++h) {
                HourStamp t(date, h);
                auto target = observed_today->at(t);
                if (!target || !data.weather.at(t) || !merged.at(t.minus_hours(24))) continue;
                auto fv = assemble_features(merged, data.weather, data.holidays, all, t, window);
                samples.rows.push_back(fv.values);
                samples.targets.push_back(*target);
                samples.timestamps.push_back(t);
            }
        }
    } else {
        samples = build_samples(data.loads, data.weather, data.holidays, begin, end);
    }
    if (samples.size() < 2) {
        throw ValidationError("training window " + begin.to_string() + " .. " + end.to_string() +
                              " yields fewer than 2 usable samples");
    }

    const std::uint64_t fit_seed =
        mix_seed(config_.seed, std::uint64_t(HourStamp(date, timepoint).hours_since_epoch()));
    TrainedModel out;
    out.mask = config_.mask;
    out.with_anchor = with_anchor;
    out.train_begin = samples.timestamps.front();
    out.train_end = samples.timestamps.back().plus_hours(1);
    out.seed = fit_seed;
    out.regressor = train_regressor(config_.algorithm, config_.params,
                                    samples.to_matrix(config_.mask), fit_seed);
    ++trainings_;
    return out;
}

std::array<double, 24> ForecastPipeline::day_ahead_predict(const PipelineDataset& data,
                                                           CivilDate date) {
    const bool stale = !day_ahead_model_ || !last_train_date_ ||
                       last_train_date_->days_until(date) >= config_.window_days ||
                       last_train_date_->days_until(date) < 0;
    if (stale) {
        day_ahead_model_ = train_window(data, date, false, 0, 0, nullptr);
        last_train_date_ = date;
    }

    const WeatherSeries& forecast = data.forecast_or_actual();
    std::array<double, 24> out{};
    for (int h = 0; h < 24; ++h) {
        HourStamp t(date, h);
        auto fv = assemble_features(data.loads, forecast, data.holidays, config_.mask, t);
        out[std::size_t(h)] = predict(*day_ahead_model_->regressor, fv.selected());
    }
    return out;
}

std::map<int, double> ForecastPipeline::midday_modify(const PipelineDataset& data, CivilDate date,
                                                      int current_hour,
                                                      const LoadSeries& observed_today) {
    if (!config_.midday.hours.count(current_hour)) {
        throw ValidationError("hour " + std::to_string(current_hour) +
                              " is not a modification timepoint of variant '" +
                              config_.midday.variant + "'");
    }
    const int begin = config_.midday.anchor_begin(current_hour);
    if (begin >= current_hour) {
        throw ValidationError("modification at hour " + std::to_string(current_hour) +
                              " has an empty observation window");
    }
    // observations must cover every hour of today before the timepoint
    for (int h = 0; h < current_hour; ++h) {
        if (!observed_today.at(HourStamp(date, h))) {
            throw ValidationError("missing observed load at " + HourStamp(date, h).to_string());
        }
    }

    TrainedModel model = train_window(data, date, true, begin, current_hour, &observed_today);

    // prediction rows: forecast weather, today's anchor, lag from history or
    // today's own observations
    AnchorWindow window{HourStamp(date, begin), HourStamp(date, current_hour)};
    LoadSeries merged = LoadSeries::merge(
        data.loads.slice(HourStamp(date.plus_days(-config_.history_days), 0), HourStamp(date, 0)),
        observed_today);
    const WeatherSeries& forecast = data.forecast_or_actual();
    std::map<int, double> out;
    for (int h = current_hour; h < 24; ++h) {
        HourStamp t(date, h);
        auto fv = assemble_features(merged, forecast, data.holidays, config_.mask, t, window);
        out[h] = predict(*model.regressor, fv.selected());
    }
    return out;
}

}  // namespace icetes
