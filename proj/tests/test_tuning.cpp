#include <doctest.h>

#include <algorithm>
#include <set>

#include "icetes/errors.hpp"
#include "icetes/rng.hpp"
#include "icetes/tuning.hpp"

using namespace icetes;

namespace {

// SampleSet with synthetic feature rows; target = fn(row)
SampleSet make_samples(std::size_t n, std::uint64_t seed,
                       double (*target)(const std::array<double, 8>&)) {
    Rng rng(seed);
    SampleSet s;
    for (std::size_t i = 0; i < n; ++i) {
        std::array<double, 8> row{};
        row[0] = rng.uniform(20.0, 35.0);        // T
        row[1] = rng.uniform(30.0, 90.0);        // H
        row[2] = rng.uniform(0.0, 800.0);        // R
        row[3] = rng.uniform(0.0, 8.0);          // S
        row[4] = 1.0 + double(i % 7);            // W
        row[5] = double(i % 24);                 // O
        row[6] = rng.uniform(500.0, 4000.0);     // L
        s.rows.push_back(row);
        s.targets.push_back(target(row));
        s.timestamps.push_back(HourStamp(std::int64_t(i)));
    }
    return s;
}

double constant_target(const std::array<double, 8>&) { return 1200.0; }

// piecewise-constant in T: ideal for trees, awkward for a small MLP
double step_of_t(const std::array<double, 8>& row) {
    if (row[0] < 25.0) return 800.0;
    if (row[0] < 30.0) return 2400.0;
    return 1300.0;
}

Params small_rf() {
    Params p;
    p.set("n_estimators", 40.0);
    p.set("max_depth", 8.0);
    p.set("min_sample_split", 4.0);
    p.set("min_samples_leaf", 2.0);
    return p;
}

}  // namespace

TEST_CASE("kfold assignments partition the samples") {
    auto s = make_samples(103, 1, constant_target);
    for (FoldMode mode : {FoldMode::Chronological, FoldMode::Shuffled}) {
        auto folds = kfold_assignments(s, 5, mode, 9);
        std::set<std::size_t> seen;
        std::size_t total = 0;
        for (const auto& f : folds) {
            CHECK(f.size() >= 20);
            CHECK(f.size() <= 21);
            total += f.size();
            seen.insert(f.begin(), f.end());
        }
        CHECK(total == 103);
        CHECK(seen.size() == 103);  // disjoint and covering
    }
}

TEST_CASE("kfold cross validation") {
    SUBCASE("perfectly learnable constant target scores zero") {
        auto s = make_samples(60, 2, constant_target);
        auto m = kfold_cv("rf", small_rf(), FeatureMask::parse("T"), s, 5, 7);
        CHECK(m.mae == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(m.n == 60);
    }
    SUBCASE("leave-one-out boundary runs") {
        auto s = make_samples(5, 3, constant_target);
        auto m = kfold_cv("rf", small_rf(), FeatureMask::parse("T"), s, 5, 7);
        CHECK(m.n == 5);
    }
    SUBCASE("k larger than n rejected") {
        auto s = make_samples(4, 4, constant_target);
        CHECK_THROWS_AS(kfold_cv("rf", small_rf(), FeatureMask::parse("T"), s, 5, 7),
                        ValidationError);
    }
    SUBCASE("metrics are invariant to sample order") {
        auto s = make_samples(80, 5, step_of_t);
        SampleSet shuffled = s;
        Rng rng(11);
        std::vector<std::size_t> perm(s.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        rng.shuffle(perm);
        for (std::size_t i = 0; i < perm.size(); ++i) {
            shuffled.rows[i] = s.rows[perm[i]];
            shuffled.targets[i] = s.targets[perm[i]];
            shuffled.timestamps[i] = s.timestamps[perm[i]];
        }
        auto a = kfold_cv("rf", small_rf(), FeatureMask::parse("TL"), s, 5, 7);
        auto b = kfold_cv("rf", small_rf(), FeatureMask::parse("TL"), shuffled, 5, 7);
        CHECK(a.mae == b.mae);
        CHECK(a.rmse == b.rmse);
        // determinism under repeated evaluation
        auto c = kfold_cv("rf", small_rf(), FeatureMask::parse("TL"), s, 5, 7);
        CHECK(a.mae == c.mae);
    }
    SUBCASE("mae never exceeds rmse") {
        auto s = make_samples(90, 6, step_of_t);
        auto m = kfold_cv("rf", small_rf(), FeatureMask::parse("THRSWOL"), s, 5, 7);
        CHECK(m.mae <= m.rmse + 1e-12);
    }
}

TEST_CASE("grid search") {
    SUBCASE("single-point grid returns that point") {
        auto s = make_samples(40, 7, constant_target);
        HyperParamGrid g;
        g.algorithm = "rf";
        g.axes = {{"n_estimators", {ParamValue(10.0)}}, {"max_depth", {ParamValue(4.0)}}};
        auto r = grid_search("rf", g, FeatureMask::parse("T"), s, 4, 1);
        CHECK(r.evaluations == 1);
        CHECK(r.best_params.get_int("n_estimators", 0) == 10);
        CHECK(r.best_params.get_int("max_depth", 0) == 4);
    }
    SUBCASE("point that can express the target wins") {
        // depth 1 cannot represent a 3-level step function; depth 8 can
        auto s = make_samples(150, 8, step_of_t);
        HyperParamGrid g;
        g.algorithm = "rf";
        g.axes = {{"max_depth", {ParamValue(1.0), ParamValue(8.0)}},
                  {"n_estimators", {ParamValue(30.0)}},
                  {"min_samples_leaf", {ParamValue(2.0)}},
                  {"max_features", {ParamValue(7.0)}}};
        auto r = grid_search("rf", g, FeatureMask::parse("T"), s, 5, 1);
        CHECK(r.best_params.get_int("max_depth", 0) == 8);
    }
    SUBCASE("default grids enumerate the full product") {
        CHECK(HyperParamGrid::defaults_for("rf").size() == 300);   // 5*5*4*3
        CHECK(HyperParamGrid::defaults_for("xgb").size() == 640);  // 5*4*4*4*2
        CHECK(HyperParamGrid::defaults_for("mlp").size() == 9);    // 3*3
        CHECK(HyperParamGrid::defaults_for("svr").size() == 48);   // 3*4*4
    }
    SUBCASE("enumeration order is first-axis-outermost") {
        HyperParamGrid g;
        g.axes = {{"a", {ParamValue(1.0), ParamValue(2.0)}},
                  {"b", {ParamValue(10.0), ParamValue(20.0), ParamValue(30.0)}}};
        CHECK(g.point(0).get_num("a", 0) == 1.0);
        CHECK(g.point(0).get_num("b", 0) == 10.0);
        CHECK(g.point(1).get_num("b", 0) == 20.0);
        CHECK(g.point(3).get_num("a", 0) == 2.0);
        CHECK(g.point(3).get_num("b", 0) == 10.0);
    }
}

TEST_CASE("feature search") {
    SUBCASE("returns all 127 unique masks; constant target ties resolve to {T}") {
        auto s = make_samples(60, 9, constant_target);
        auto ranked = feature_search("rf", small_rf(), s, 4, 1);
        REQUIRE(ranked.size() == 127);
        std::set<unsigned> bits;
        for (const auto& r : ranked) bits.insert(r.mask.bits());
        CHECK(bits.size() == 127);
        CHECK(ranked.front().mask.to_string() == "T");
        CHECK(ranked.front().metrics.mae == doctest::Approx(0.0).epsilon(1e-12));
        // cardinality-then-lexical tie order: {T} then {H} then {R} ...
        CHECK(ranked[1].mask.to_string() == "H");
        CHECK(ranked[6].mask.to_string() == "L");
        CHECK(ranked.back().mask.cardinality() == 7);
    }
    SUBCASE("target driven by T puts T in the winning mask") {
        auto s = make_samples(150, 10, step_of_t);
        auto ranked = feature_search("rf", small_rf(), s, 5, 2);
        CHECK(ranked.front().mask.contains(Feature::T));
        // independent check: a T-only fit is near-perfect on this fixture
        auto t_only = kfold_cv("rf", small_rf(), FeatureMask::parse("T"), s, 5, 2);
        CHECK(ranked.front().metrics.mae <= t_only.mae + 1e-9);
        CHECK(t_only.mae < 80.0);
    }
    SUBCASE("ranking is deterministic") {
        auto s = make_samples(100, 11, step_of_t);
        auto a = feature_search("rf", small_rf(), s, 4, 3);
        auto b = feature_search("rf", small_rf(), s, 4, 3);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].mask == b[i].mask);
            CHECK(a[i].metrics.mae == b[i].metrics.mae);
        }
    }
}

TEST_CASE("algorithm comparison") {
    SUBCASE("single algorithm yields one row") {
        auto s = make_samples(60, 12, constant_target);
        HyperParamGrid g;
        g.algorithm = "rf";
        g.axes = {{"n_estimators", {ParamValue(20.0)}}, {"max_depth", {ParamValue(5.0)}}};
        auto table = compare_algorithms(s, {"rf"}, {FeatureMask::parse("TO")}, {g}, 4, 1);
        REQUIRE(table.size() == 1);
        CHECK(table[0].algorithm == "rf");
        CHECK(table[0].train_seconds >= 0.0);
    }
    SUBCASE("trees beat a small mlp on a piecewise-constant target") {
        auto s = make_samples(150, 13, step_of_t);
        HyperParamGrid rf_grid;
        rf_grid.algorithm = "rf";
        rf_grid.axes = {{"n_estimators", {ParamValue(40.0)}}, {"max_depth", {ParamValue(8.0)}}};
        HyperParamGrid mlp_grid;
        mlp_grid.algorithm = "mlp";
        mlp_grid.axes = {{"n_layer", {ParamValue(1.0)}},
                         {"n_neuron", {ParamValue(8.0)}},
                         {"epochs", {ParamValue(60.0)}}};
        auto table = compare_algorithms(s, {"mlp", "rf"}, {FeatureMask::parse("T")},
                                        {mlp_grid, rf_grid}, 4, 1);
        REQUIRE(table.size() == 2);
        CHECK(table[0].algorithm == "rf");  // ranked by MAE ascending
        CHECK(table[0].metrics.mae < table[1].metrics.mae);
    }
}
