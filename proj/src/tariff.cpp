#include "icetes/tariff.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "icetes/errors.hpp"

namespace icetes {

std::string tier_name(Tier t) {
    switch (t) {
        case Tier::OffPeak: return "off_peak";
        case Tier::PartialPeak: return "partial_peak";
        case Tier::Peak: return "peak";
        case Tier::SuperPeak: return "super_peak";
    }
    return "?";
}

Tier tier_from_name(const std::string& name) {
    if (name == "off_peak") return Tier::OffPeak;
    if (name == "partial_peak") return Tier::PartialPeak;
    if (name == "peak") return Tier::Peak;
    if (name == "super_peak") return Tier::SuperPeak;
    throw ConfigError("unknown tariff tier '" + name + "'");
}

TariffSchedule::TariffSchedule(
    std::string name,
    std::vector<std::pair<int, std::array<std::optional<HourEntry>, 24>>> months,
    std::vector<std::vector<int>> sequence_overrides)
    : name_(std::move(name)) {
    for (auto& [month, entries] : months) {
        if (month < 1 || month > 12) throw ConfigError(name_ + ": month out of range");
        if (months_[month - 1]) throw ConfigError(name_ + ": month " + std::to_string(month) + " defined twice");
        std::array<HourEntry, 24> full{};
        for (int h = 0; h < 24; ++h) {
            if (!entries[h]) {
                throw ConfigError(name_ + ": month " + std::to_string(month) + " leaves hour " +
                                  std::to_string(h) + " uncovered");
            }
            if (entries[h]->rate <= 0.0) {
                throw ConfigError(name_ + ": non-positive rate at month " + std::to_string(month) +
                                  " hour " + std::to_string(h));
            }
            full[h] = *entries[h];
        }
        // tier rate ordering within the month
        std::map<Tier, double> tier_rate;
        for (const auto& e : full) {
            auto [it, inserted] = tier_rate.emplace(e.tier, e.rate);
            if (!inserted && it->second != e.rate) {
                throw ConfigError(name_ + ": tier " + tier_name(e.tier) + " has two rates in month " +
                                  std::to_string(month));
            }
        }
        auto rate_of = [&](Tier t) -> std::optional<double> {
            auto it = tier_rate.find(t);
            if (it == tier_rate.end()) return std::nullopt;
            return it->second;
        };
        auto off = rate_of(Tier::OffPeak), partial = rate_of(Tier::PartialPeak);
        auto peak = rate_of(Tier::Peak), super = rate_of(Tier::SuperPeak);
        if (off && partial && !(*off < *partial))
            throw ConfigError(name_ + ": off-peak rate must be below partial-peak");
        if (partial && peak && !(*partial < *peak))
            throw ConfigError(name_ + ": partial-peak rate must be below peak");
        if (peak && super && !(*peak <= *super))
            throw ConfigError(name_ + ": peak rate must not exceed super-peak");
        months_[month - 1] = full;
    }

    for (auto& seq : sequence_overrides) {
        if (seq.empty()) throw ConfigError(name_ + ": empty hour_sequence_override");
        int month = seq.front();
        if (month < 1 || month > 12 || !months_[month - 1])
            throw ConfigError(name_ + ": hour_sequence_override for uncovered month");
        std::vector<int> hours(seq.begin() + 1, seq.end());
        auto expected = non_offpeak_hours(month);
        auto sorted = hours;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != expected)
            throw ConfigError(name_ + ": hour_sequence_override for month " + std::to_string(month) +
                              " is not a permutation of the non-off-peak hours");
        overrides_[month - 1] = hours;
    }
}

bool TariffSchedule::covers_month(int month) const {
    return month >= 1 && month <= 12 && months_[month - 1].has_value();
}

std::vector<int> TariffSchedule::covered_months() const {
    std::vector<int> out;
    for (int m = 1; m <= 12; ++m)
        if (months_[m - 1]) out.push_back(m);
    return out;
}

const TariffSchedule::HourEntry& TariffSchedule::entry(int month, int hour) const {
    if (hour < 0 || hour > 23) throw ConfigError(name_ + ": hour " + std::to_string(hour) + " out of range");
    if (!covers_month(month))
        throw ConfigError(name_ + ": month " + std::to_string(month) + " not covered by tariff");
    return (*months_[month - 1])[hour];
}

double TariffSchedule::rate_at(int month, int hour) const { return entry(month, hour).rate; }

Tier TariffSchedule::tier_at(int month, int hour) const { return entry(month, hour).tier; }

std::vector<int> TariffSchedule::non_offpeak_hours(int month) const {
    std::vector<int> out;
    for (int h = 0; h < 24; ++h)
        if (tier_at(month, h) != Tier::OffPeak) out.push_back(h);
    return out;
}

std::vector<int> TariffSchedule::derive_hour_sequence(int month) const {
    if (!covers_month(month))
        throw ConfigError(name_ + ": month " + std::to_string(month) + " not covered by tariff");
    if (overrides_[month - 1]) return *overrides_[month - 1];

    std::vector<int> seq;
    for (int h = 0; h < 24; ++h)
        if (tier_at(month, h) == Tier::SuperPeak) seq.push_back(h);
    int last_peak = -1;
    for (int h = 0; h < 24; ++h) {
        Tier t = tier_at(month, h);
        if (t == Tier::Peak) seq.push_back(h);
        if (t == Tier::Peak || t == Tier::SuperPeak) last_peak = h;
    }

    // contiguous partial-peak periods, chronological
    std::vector<std::vector<int>> periods;
    for (int h = 0; h < 24; ++h) {
        if (tier_at(month, h) != Tier::PartialPeak) continue;
        if (!periods.empty() && periods.back().back() == h - 1) {
            periods.back().push_back(h);
        } else {
            periods.push_back({h});
        }
    }

    // periods still followed by peak/super-peak hours come first, latest
    // first; the period after the final peak goes last
    std::vector<const std::vector<int>*> before_final, after_final;
    for (const auto& p : periods) {
        if (p.back() < last_peak) before_final.push_back(&p);
        else after_final.push_back(&p);
    }
    std::reverse(before_final.begin(), before_final.end());
    for (const auto* p : before_final)
        for (auto it = p->rbegin(); it != p->rend(); ++it) seq.push_back(*it);
    for (const auto* p : after_final)
        for (auto it = p->rbegin(); it != p->rend(); ++it) seq.push_back(*it);
    return seq;
}

double TariffSchedule::energy_cost(int month, const std::array<double, 24>& hourly_kwh) const {
    double total = 0.0;
    for (int h = 0; h < 24; ++h) total += hourly_kwh[h] * rate_at(month, h);
    return total;
}

namespace {

std::array<std::optional<TariffSchedule::HourEntry>, 24> beijing_profile(bool with_super_peak) {
    using E = TariffSchedule::HourEntry;
    std::array<std::optional<E>, 24> hours{};
    auto set = [&](std::initializer_list<int> hs, Tier t, double rate) {
        for (int h : hs) hours[h] = E{t, rate};
    };
    set({23, 0, 1, 2, 3, 4, 5, 6}, Tier::OffPeak, 0.1001);
    set({7, 8, 9, 15, 17, 21, 22}, Tier::PartialPeak, 0.5675);
    set({10, 13, 14, 18, 19, 20}, Tier::Peak, 1.0862);
    if (with_super_peak) {
        set({11, 12, 16}, Tier::SuperPeak, 1.2145);
    } else {
        set({11, 12, 16}, Tier::Peak, 1.0862);
    }
    return hours;
}

}  // namespace

TariffSchedule TariffSchedule::beijing_2021() {
    std::vector<std::pair<int, std::array<std::optional<HourEntry>, 24>>> months;
    for (int m : {7, 8}) months.emplace_back(m, beijing_profile(true));
    for (int m : {5, 6, 9, 10}) months.emplace_back(m, beijing_profile(false));
    return TariffSchedule("beijing-commercial-2021", std::move(months));
}

TariffSchedule TariffSchedule::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open tariff config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str(), path);
}

TariffSchedule TariffSchedule::from_json_text(const std::string& text, const std::string& origin) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    try {
        std::string name = j.value("name", origin);
        std::vector<std::pair<int, std::array<std::optional<HourEntry>, 24>>> months;
        for (const auto& block : j.at("blocks")) {
            int m0 = block.at("month_range").at(0).get<int>();
            int m1 = block.at("month_range").at(1).get<int>();
            for (int m = m0; m <= m1; ++m) {
                std::array<std::optional<HourEntry>, 24> hours{};
                for (const auto& period : block.at("periods")) {
                    Tier tier = tier_from_name(period.at("tier").get<std::string>());
                    double rate = period.at("rate").get<double>();
                    for (int h : period.at("hours").get<std::vector<int>>()) {
                        if (h < 0 || h > 23) throw ConfigError(name + ": hour out of range in periods");
                        if (hours[h]) throw ConfigError(name + ": hour " + std::to_string(h) + " assigned twice");
                        hours[h] = HourEntry{tier, rate};
                    }
                }
                months.emplace_back(m, hours);
            }
        }
        std::vector<std::vector<int>> overrides;
        if (j.contains("hour_sequence_override") && !j["hour_sequence_override"].is_null()) {
            for (const auto& [key, seq] : j["hour_sequence_override"].items()) {
                std::vector<int> entry{std::stoi(key)};
                for (int h : seq.get<std::vector<int>>()) entry.push_back(h);
                overrides.push_back(std::move(entry));
            }
        }
        return TariffSchedule(name, std::move(months), std::move(overrides));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(origin + ": " + e.what());
    }
}

}  // namespace icetes
