#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>

#include "icetes/features.hpp"
#include "icetes/params.hpp"
#include "icetes/series.hpp"

namespace icetes {

// Modification timepoints per predictor variant. The anchor window for a
// timepoint runs from the previous timepoint of the same day (midnight when
// there is none) up to, and excluding, the timepoint itself.
struct MiddayPlanSpec {
    std::string variant;     // "day-ahead" | "mid-day6" | "mid-day24"
    std::set<int> hours;     // hours of day with a modification

    static MiddayPlanSpec day_ahead() { return {"day-ahead", {}}; }
    static MiddayPlanSpec midday6() { return {"mid-day6", {7, 8, 9, 15, 17}}; }
    static MiddayPlanSpec midday24();
    static MiddayPlanSpec from_name(const std::string& name);  // throws ConfigError

    int anchor_begin(int timepoint) const;  // previous timepoint, else 0
};

struct PipelineConfig {
    std::string algorithm = "rf";
    Params params;  // empty entries fall back to per-algorithm defaults
    FeatureMask mask = FeatureMask::parse("THRSOL");
    int history_days = 60;  // one of {7, 14, 30, 60}
    int window_days = 1;    // one of {1, 7, 30}; retraining cadence
    MiddayPlanSpec midday = MiddayPlanSpec::day_ahead();
    std::uint64_t seed = 20210701;
    // declared tolerance for the "no new information" contract: a mid-day
    // modification fed observations identical to the day-ahead view must stay
    // within this fraction of mean load
    double no_info_tolerance = 0.10;

    void validate() const;  // throws ConfigError
    static PipelineConfig from_json_file(const std::string& path);
    static PipelineConfig from_json_text(const std::string& text, const std::string& origin);
};

// Everything the predictors may look at. Forecast weather is what
// prediction-time features use; training features use the historical series.
// When no forecast series is supplied the actual one stands in (perfect
// forecast).
struct PipelineDataset {
    LoadSeries loads;
    WeatherSeries weather;           // historical
    WeatherSeries weather_forecast;  // may be empty
    HolidaySet holidays;

    const WeatherSeries& forecast_or_actual() const {
        return weather_forecast.empty() ? weather : weather_forecast;
    }
};

struct TrainedModel {
    std::shared_ptr<const Regressor> regressor;
    FeatureMask mask;
    bool with_anchor = false;
    HourStamp train_begin;
    HourStamp train_end;  // exclusive
    std::uint64_t seed = 0;
};

// Sliding-window forecaster: retrains on the trailing history window at the
// configured cadence and issues day-ahead plus mid-day predictions. Not
// thread-safe; one instance per scenario run.
class ForecastPipeline {
public:
    explicit ForecastPipeline(PipelineConfig config);

    const PipelineConfig& config() const { return config_; }

    // Hourly predictions for all 24 hours of `date`. The model is retrained
    // on the `history_days` window ending the previous day whenever the last
    // training is `window_days` old (or absent); between cadence points the
    // cached model is reused. History must cover the window; the forecast
    // weather series must cover `date`.
    std::array<double, 24> day_ahead_predict(const PipelineDataset& data, CivilDate date);

    // Mid-day modification at a configured timepoint: trains a fresh model
    // with the anchor input A appended (training rows from the same history
    // window plus today's observed hours) and predicts the remaining hours
    // of `date`. Returned values override prior predictions from
    // current_hour onward.
    std::map<int, double> midday_modify(const PipelineDataset& data, CivilDate date,
                                        int current_hour, const LoadSeries& observed_today);

    int trainings() const { return trainings_; }

private:
    TrainedModel train_window(const PipelineDataset& data, CivilDate date, bool with_anchor,
                              int anchor_begin, int timepoint, const LoadSeries* observed_today);

    PipelineConfig config_;
    std::optional<TrainedModel> day_ahead_model_;
    std::optional<CivilDate> last_train_date_;
    int trainings_ = 0;
};

}  // namespace icetes
