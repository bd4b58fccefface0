#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "icetes/errors.hpp"
#include "icetes/rng.hpp"
#include "icetes/tariff.hpp"

using namespace icetes;

TEST_CASE("beijing 2021 rates and tiers are exact") {
    auto t = TariffSchedule::beijing_2021();

    // July four-tier profile
    CHECK(t.rate_at(7, 11) == 1.2145);
    CHECK(t.rate_at(7, 12) == 1.2145);
    CHECK(t.rate_at(7, 16) == 1.2145);
    CHECK(t.rate_at(7, 10) == 1.0862);
    CHECK(t.rate_at(7, 13) == 1.0862);
    CHECK(t.rate_at(7, 14) == 1.0862);
    CHECK(t.rate_at(7, 18) == 1.0862);
    CHECK(t.rate_at(7, 19) == 1.0862);
    CHECK(t.rate_at(7, 20) == 1.0862);
    for (int h : {7, 8, 9, 15, 17, 21, 22}) CHECK(t.rate_at(7, h) == 0.5675);
    for (int h : {23, 0, 1, 2, 3, 4, 5, 6}) CHECK(t.rate_at(7, h) == 0.1001);

    CHECK(t.tier_at(7, 16) == Tier::SuperPeak);
    CHECK(t.tier_at(7, 19) == Tier::Peak);
    CHECK(t.tier_at(7, 8) == Tier::PartialPeak);
    CHECK(t.tier_at(7, 3) == Tier::OffPeak);
    CHECK(t.tier_at(8, 11) == Tier::SuperPeak);

    // shoulder months drop the super-peak tier; those hours bill at peak
    CHECK(t.tier_at(9, 11) == Tier::Peak);
    CHECK(t.rate_at(9, 11) == 1.0862);
    CHECK(t.tier_at(5, 16) == Tier::Peak);
    CHECK(t.rate_at(10, 12) == 1.0862);

    CHECK_THROWS_AS(t.rate_at(1, 11), ConfigError);   // out of season
    CHECK_THROWS_AS(t.rate_at(7, 24), ConfigError);   // bad hour
}

TEST_CASE("derived july/august hour sequence matches the operating order") {
    auto t = TariffSchedule::beijing_2021();
    const std::vector<int> expected{11, 12, 16, 10, 13, 14, 18, 19, 20, 17, 15, 9, 8, 7, 22, 21};
    CHECK(t.derive_hour_sequence(7) == expected);
    CHECK(t.derive_hour_sequence(8) == expected);
}

namespace {

TariffSchedule make_tariff(const std::map<int, std::pair<Tier, double>>& hours) {
    std::array<std::optional<TariffSchedule::HourEntry>, 24> entries{};
    for (int h = 0; h < 24; ++h) {
        auto it = hours.find(h);
        if (it != hours.end()) {
            entries[h] = TariffSchedule::HourEntry{it->second.first, it->second.second};
        } else {
            entries[h] = TariffSchedule::HourEntry{Tier::OffPeak, 0.1};
        }
    }
    return TariffSchedule("test", {{7, entries}});
}

}  // namespace

TEST_CASE("hour sequence degenerate and hand-derived profiles") {
    SUBCASE("single flat peak tier runs chronologically") {
        std::map<int, std::pair<Tier, double>> hours;
        for (int h = 7; h <= 22; ++h) hours[h] = {Tier::Peak, 1.0};
        auto t = make_tariff(hours);
        std::vector<int> expected;
        for (int h = 7; h <= 22; ++h) expected.push_back(h);
        CHECK(t.derive_hour_sequence(7) == expected);
    }
    SUBCASE("partial-peak shoulders around one peak block") {
        std::map<int, std::pair<Tier, double>> hours;
        for (int h : {7, 8, 9, 21, 22}) hours[h] = {Tier::PartialPeak, 0.5};
        for (int h = 10; h <= 20; ++h) hours[h] = {Tier::Peak, 1.0};
        auto t = make_tariff(hours);
        std::vector<int> expected{10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 9, 8, 7, 22, 21};
        CHECK(t.derive_hour_sequence(7) == expected);
    }
}

TEST_CASE("sequence is a permutation with tier-block ordering") {
    Rng rng(20210701);
    auto t_default = TariffSchedule::beijing_2021();
    for (int month : t_default.covered_months()) {
        auto seq = t_default.derive_hour_sequence(month);
        auto expected = t_default.non_offpeak_hours(month);
        auto sorted = seq;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted == expected);

        // every super-peak hour before every peak hour, every peak before
        // every partial-peak
        auto rank = [&](Tier tier) {
            switch (tier) {
                case Tier::SuperPeak: return 0;
                case Tier::Peak: return 1;
                case Tier::PartialPeak: return 2;
                default: return 3;
            }
        };
        for (std::size_t i = 1; i < seq.size(); ++i) {
            CHECK(rank(t_default.tier_at(month, seq[i - 1])) <= rank(t_default.tier_at(month, seq[i])));
        }
    }

    // randomized tariffs keep the permutation property
    for (int trial = 0; trial < 50; ++trial) {
        std::map<int, std::pair<Tier, double>> hours;
        for (int h = 7; h <= 22; ++h) {
            double u = rng.uniform();
            if (u < 0.2) hours[h] = {Tier::SuperPeak, 1.3};
            else if (u < 0.5) hours[h] = {Tier::Peak, 1.0};
            else if (u < 0.9) hours[h] = {Tier::PartialPeak, 0.5};
            // else off-peak
        }
        auto t = make_tariff(hours);
        auto seq = t.derive_hour_sequence(7);
        auto expected = t.non_offpeak_hours(7);
        auto sorted = seq;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted == expected);
        CHECK(std::set<int>(seq.begin(), seq.end()).size() == seq.size());
    }
}

TEST_CASE("same tier same month implies same rate") {
    auto t = TariffSchedule::beijing_2021();
    for (int month : t.covered_months()) {
        std::map<Tier, double> seen;
        for (int h = 0; h < 24; ++h) {
            auto [it, inserted] = seen.emplace(t.tier_at(month, h), t.rate_at(month, h));
            if (!inserted) CHECK(it->second == t.rate_at(month, h));
        }
    }
}

TEST_CASE("tariff config validation") {
    SUBCASE("uncovered hour rejected") {
        std::array<std::optional<TariffSchedule::HourEntry>, 24> entries{};
        for (int h = 0; h < 23; ++h) entries[h] = TariffSchedule::HourEntry{Tier::OffPeak, 0.1};
        CHECK_THROWS_AS(TariffSchedule("bad", {{7, entries}}), ConfigError);
    }
    SUBCASE("tier rate ordering enforced") {
        std::map<int, std::pair<Tier, double>> hours;
        for (int h = 7; h <= 22; ++h) hours[h] = {Tier::PartialPeak, 0.05};  // below off-peak
        CHECK_THROWS_AS(make_tariff(hours), ConfigError);
    }
}

TEST_CASE("json round trip and sequence override") {
    const std::string text = R"({
      "name": "toy",
      "blocks": [
        {"month_range": [7, 8],
         "periods": [
           {"tier": "peak", "rate": 1.0, "hours": [10, 11, 12]},
           {"tier": "partial_peak", "rate": 0.5, "hours": [7, 8, 9, 13]},
           {"tier": "off_peak", "rate": 0.1,
            "hours": [0, 1, 2, 3, 4, 5, 6, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23]}
         ]}
      ],
      "hour_sequence_override": {"7": [12, 11, 10, 13, 9, 8, 7]}
    })";
    auto t = TariffSchedule::from_json_text(text, "inline");
    CHECK(t.rate_at(7, 11) == 1.0);
    CHECK(t.tier_at(8, 13) == Tier::PartialPeak);
    CHECK(t.derive_hour_sequence(7) == std::vector<int>{12, 11, 10, 13, 9, 8, 7});
    // month 8 has no override: rule applies
    CHECK(t.derive_hour_sequence(8) == std::vector<int>{10, 11, 12, 9, 8, 7, 13});
}
