#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "icetes/regressor.hpp"
#include "icetes/series.hpp"

namespace icetes {

// Canonical feature order. A (the mid-day anchor: average observed load
// between modification timepoints) is appended to anchored models and is not
// part of the searchable mask space.
enum class Feature { T = 0, H = 1, R = 2, S = 3, W = 4, O = 5, L = 6, A = 7 };

constexpr int kMaskFeatureCount = 7;

char feature_letter(Feature f);

// Non-empty subset of {T,H,R,S,W,O,L}; 127 valid masks.
class FeatureMask {
public:
    FeatureMask() = default;

    static FeatureMask from_bits(unsigned bits);              // throws ConfigError unless 1..127
    static FeatureMask parse(const std::string& letters);     // e.g. "THRSOL"

    bool contains(Feature f) const { return bits_ & (1u << unsigned(f)); }
    int cardinality() const;
    unsigned bits() const { return bits_; }
    std::vector<Feature> features() const;  // ascending canonical order
    std::string to_string() const;

    // All 127 masks in deterministic enumeration order (bits ascending).
    static std::vector<FeatureMask> all_masks();

    // Ranking tie-break: smaller cardinality first, then the canonical
    // feature sequence lexicographically ({T} precedes {H}).
    static bool tie_less(const FeatureMask& a, const FeatureMask& b);

    bool operator==(const FeatureMask&) const = default;

private:
    unsigned bits_ = 0;
};

// Fully populated feature row plus the mask describing which slots are
// meaningful. selected() flattens to the model input layout: masked columns
// in canonical order, anchor last when present.
struct FeatureVector {
    FeatureMask mask;
    bool has_anchor = false;
    std::array<double, 8> values{};

    std::vector<double> selected() const;
};

// Mean observed load over [begin, end_exclusive); the mid-day anchor input.
struct AnchorWindow {
    HourStamp begin;
    HourStamp end_exclusive;
};

// Builds one feature row for target_hour. T/H/R/S come from `weather` at the
// target hour, W from the calendar, O from the hour of day, L from the load
// one day earlier, A from the anchor window over `loads`. Any required value
// that is missing raises ValidationError naming the missing span.
FeatureVector assemble_features(const LoadSeries& loads, const WeatherSeries& weather,
                                const HolidaySet& holidays, const FeatureMask& mask,
                                HourStamp target_hour,
                                std::optional<AnchorWindow> anchor = std::nullopt);

// Training rows with full feature columns (all seven, anchor optional),
// shared across masks so feature search compares on identical samples.
struct SampleSet {
    bool with_anchor = false;
    std::vector<std::array<double, 8>> rows;
    std::vector<double> targets;
    std::vector<HourStamp> timestamps;

    std::size_t size() const { return targets.size(); }
    // Masked columns in canonical order (+A when with_anchor).
    TrainMatrix to_matrix(const FeatureMask& mask) const;
    std::vector<double> model_input(const FeatureMask& mask, std::size_t row) const;
};

// Rows for every hour in [begin, end) whose inputs are all available; hours
// hit by gaps are skipped, never filled. Always populates all 7 features, so
// rows missing the previous-day load are dropped.
SampleSet build_samples(const LoadSeries& loads, const WeatherSeries& weather,
                        const HolidaySet& holidays, HourStamp begin, HourStamp end);

}  // namespace icetes
