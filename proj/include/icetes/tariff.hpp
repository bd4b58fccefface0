#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace icetes {

enum class Tier { OffPeak, PartialPeak, Peak, SuperPeak };

std::string tier_name(Tier t);
Tier tier_from_name(const std::string& name);  // throws ConfigError

// Month-dependent time-of-use tariff: every month in the configured season
// maps each of the 24 hours to a (tier, rate) pair. Hours are labeled by
// their starting clock hour (hour 11 = 11:00-12:00).
class TariffSchedule {
public:
    struct HourEntry {
        Tier tier = Tier::OffPeak;
        double rate = 0.0;  // RMB/kWh
    };

    // Validates on construction: all 24 hours covered per configured month,
    // rates > 0, and OffPeak < PartialPeak < Peak <= SuperPeak whenever both
    // tiers occur in a month.
    TariffSchedule(std::string name,
                   std::vector<std::pair<int, std::array<std::optional<HourEntry>, 24>>> months,
                   std::vector<std::vector<int>> sequence_overrides = {});

    const std::string& name() const { return name_; }
    bool covers_month(int month) const;
    std::vector<int> covered_months() const;

    double rate_at(int month, int hour) const;  // throws ConfigError if uncovered
    Tier tier_at(int month, int hour) const;

    // The ice-allocation priority order over the month's non-OffPeak hours:
    // SuperPeak hours chronologically, then Peak hours chronologically, then
    // PartialPeak hours grouped into contiguous periods; periods that still
    // have Peak/SuperPeak hours after them come first (latest such period
    // first) and the period after the final peak comes last; hours inside
    // each period run in reversed chronological order. An explicit override
    // from config bypasses the rule.
    std::vector<int> derive_hour_sequence(int month) const;

    std::vector<int> non_offpeak_hours(int month) const;  // chronological

    // Daily energy cost: sum over 24 hours of kWh * rate.
    double energy_cost(int month, const std::array<double, 24>& hourly_kwh) const;

    // Beijing commercial-building TOU tariff, 2021. Jul/Aug carry the
    // four-tier profile; May/Jun/Sep/Oct reuse it with the super-peak hours
    // reclassified as peak at the peak rate (shoulder rates are not public;
    // this assumption is isolated here and in the shipped config file).
    static TariffSchedule beijing_2021();

    static TariffSchedule from_json_file(const std::string& path);
    static TariffSchedule from_json_text(const std::string& text, const std::string& origin);

private:
    const HourEntry& entry(int month, int hour) const;

    std::string name_;
    // index 0..11 = month-1; nullopt = month not covered
    std::array<std::optional<std::array<HourEntry, 24>>, 12> months_{};
    std::array<std::optional<std::vector<int>>, 12> overrides_{};
};

}  // namespace icetes
