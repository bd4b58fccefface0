#include "icetes/features.hpp"

#include <algorithm>

#include "icetes/errors.hpp"

namespace icetes {

char feature_letter(Feature f) {
    static constexpr char letters[] = {'T', 'H', 'R', 'S', 'W', 'O', 'L', 'A'};
    return letters[int(f)];
}

FeatureMask FeatureMask::from_bits(unsigned bits) {
    if (bits == 0 || bits >= (1u << kMaskFeatureCount)) {
        throw ConfigError("feature mask bits out of range (need a non-empty subset of T,H,R,S,W,O,L)");
    }
    FeatureMask m;
    m.bits_ = bits;
    return m;
}

FeatureMask FeatureMask::parse(const std::string& letters) {
    unsigned bits = 0;
    for (char c : letters) {
        bool found = false;
        for (int i = 0; i < kMaskFeatureCount; ++i) {
            if (c == feature_letter(Feature(i))) {
                bits |= 1u << unsigned(i);
                found = true;
                break;
            }
        }
        if (!found) throw ConfigError(std::string("unknown feature letter '") + c + "' in mask");
    }
    return from_bits(bits);
}

int FeatureMask::cardinality() const {
    int n = 0;
    for (int i = 0; i < kMaskFeatureCount; ++i)
        if (bits_ & (1u << unsigned(i))) ++n;
    return n;
}

std::vector<Feature> FeatureMask::features() const {
    std::vector<Feature> out;
    for (int i = 0; i < kMaskFeatureCount; ++i)
        if (bits_ & (1u << unsigned(i))) out.push_back(Feature(i));
    return out;
}

std::string FeatureMask::to_string() const {
    std::string out;
    for (Feature f : features()) out += feature_letter(f);
    return out;
}

std::vector<FeatureMask> FeatureMask::all_masks() {
    std::vector<FeatureMask> out;
    out.reserve(127);
    for (unsigned bits = 1; bits < (1u << kMaskFeatureCount); ++bits) out.push_back(from_bits(bits));
    return out;
}

bool FeatureMask::tie_less(const FeatureMask& a, const FeatureMask& b) {
    if (a.cardinality() != b.cardinality()) return a.cardinality() < b.cardinality();
    return a.features() < b.features();
}

std::vector<double> FeatureVector::selected() const {
    std::vector<double> out;
    for (Feature f : mask.features()) out.push_back(values[std::size_t(f)]);
    if (has_anchor) out.push_back(values[std::size_t(Feature::A)]);
    return out;
}

FeatureVector assemble_features(const LoadSeries& loads, const WeatherSeries& weather,
                                const HolidaySet& holidays, const FeatureMask& mask,
                                HourStamp target_hour, std::optional<AnchorWindow> anchor) {
    FeatureVector out;
    out.mask = mask;

    const bool needs_weather = mask.contains(Feature::T) || mask.contains(Feature::H) ||
                               mask.contains(Feature::R) || mask.contains(Feature::S);
    if (needs_weather) {
        auto w = weather.at(target_hour);
        if (!w) {
            throw ValidationError("no weather record for " + target_hour.to_string());
        }
        out.values[std::size_t(Feature::T)] = w->temperature_c;
        out.values[std::size_t(Feature::H)] = w->humidity_pct;
        out.values[std::size_t(Feature::R)] = w->solar_wm2;
        out.values[std::size_t(Feature::S)] = w->wind_ms;
    }
    if (mask.contains(Feature::W)) {
        out.values[std::size_t(Feature::W)] =
            double(mark_calendar(target_hour.date(), holidays).weekday_code);
    }
    if (mask.contains(Feature::O)) {
        out.values[std::size_t(Feature::O)] = double(target_hour.hour_of_day());
    }
    if (mask.contains(Feature::L)) {
        auto prev = loads.at(target_hour.minus_hours(24));
        if (!prev) {
            throw ValidationError("previous-day load missing at " +
                                  target_hour.minus_hours(24).to_string() +
                                  " (need one day of history)");
        }
        out.values[std::size_t(Feature::L)] = *prev;
    }
    if (anchor) {
        if (!(anchor->begin < anchor->end_exclusive)) {
            throw ValidationError("empty anchor window at " + target_hour.to_string());
        }
        const auto n = std::size_t(anchor->end_exclusive.hours_since_epoch() -
                                   anchor->begin.hours_since_epoch());
        auto window = loads.window(anchor->begin, n);
        if (!window) {
            throw ValidationError("observed loads missing in anchor window " +
                                  anchor->begin.to_string() + " .. " +
                                  anchor->end_exclusive.to_string());
        }
        double sum = 0.0;
        for (double v : *window) sum += v;
        out.values[std::size_t(Feature::A)] = sum / double(n);
        out.has_anchor = true;
    }
    return out;
}

TrainMatrix SampleSet::to_matrix(const FeatureMask& mask) const {
    TrainMatrix out;
    out.n_features = std::size_t(mask.cardinality()) + (with_anchor ? 1 : 0);
    out.x.reserve(out.n_features * size());
    out.y = targets;
    auto cols = mask.features();
    for (const auto& row : rows) {
        for (Feature f : cols) out.x.push_back(row[std::size_t(f)]);
        if (with_anchor) out.x.push_back(row[std::size_t(Feature::A)]);
    }
    return out;
}

std::vector<double> SampleSet::model_input(const FeatureMask& mask, std::size_t row) const {
    std::vector<double> out;
    for (Feature f : mask.features()) out.push_back(rows[row][std::size_t(f)]);
    if (with_anchor) out.push_back(rows[row][std::size_t(Feature::A)]);
    return out;
}

SampleSet build_samples(const LoadSeries& loads, const WeatherSeries& weather,
                        const HolidaySet& holidays, HourStamp begin, HourStamp end) {
    SampleSet out;
    const FeatureMask all = FeatureMask::from_bits((1u << kMaskFeatureCount) - 1);
    for (HourStamp t = begin; t < end; t = t.plus_hours(1)) {
        auto target = loads.at(t);
        if (!target) continue;  // gap: skip, never fill
        if (!weather.at(t)) continue;
        if (!loads.at(t.minus_hours(24))) continue;  // first day has no L
        auto fv = assemble_features(loads, weather, holidays, all, t);
        out.rows.push_back(fv.values);
        out.targets.push_back(*target);
        out.timestamps.push_back(t);
    }
    return out;
}

}  // namespace icetes
