#include <doctest.h>

#include <cmath>
#include <vector>

#include "icetes/errors.hpp"
#include "icetes/metrics.hpp"
#include "icetes/rng.hpp"

using namespace icetes;

TEST_CASE("hand-derived metric values") {
    std::vector<double> actual{1, 2, 3}, predicted{2, 2, 2};
    auto m = compute_metrics(actual, predicted);
    // MAE = (1+0+1)/3, RMSE = sqrt(2/3), mean actual = 2
    CHECK(m.mae == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(m.rmse == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
    CHECK(m.cvmae == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(m.cvrmse == doctest::Approx(std::sqrt(2.0 / 3.0) / 2.0).epsilon(1e-12));
    CHECK(m.cv_defined);
    CHECK(m.n == 3);
    CHECK(m.mean_actual == 2.0);
    // four decimal places as commonly quoted
    CHECK(m.mae == doctest::Approx(0.6667).epsilon(1e-4));
    CHECK(m.rmse == doctest::Approx(0.8165).epsilon(1e-4));
}

TEST_CASE("perfect prediction gives zeros") {
    std::vector<double> v{10, 20, 30, 40};
    auto m = compute_metrics(v, v);
    CHECK(m.mae == 0.0);
    CHECK(m.rmse == 0.0);
    CHECK(m.cvmae == 0.0);
}

TEST_CASE("error handling") {
    std::vector<double> a{1, 2}, b{1};
    CHECK_THROWS_AS(compute_metrics(a, b), ValidationError);
    CHECK_THROWS_AS(compute_metrics({}, {}), ValidationError);

    std::vector<double> zero{1, -1}, pred{0, 0};
    auto m = compute_metrics(zero, pred);
    CHECK_FALSE(m.cv_defined);  // zero mean: CV variants undefined
}

TEST_CASE("mae never exceeds rmse") {
    Rng rng(123);
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t n = 1 + rng.uniform_index(50);
        std::vector<double> a(n), p(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = rng.uniform(0.0, 5000.0);
            p[i] = rng.uniform(0.0, 5000.0);
        }
        auto m = compute_metrics(a, p);
        CHECK(m.mae <= m.rmse + 1e-12);
    }
}

TEST_CASE("fold averaging") {
    std::vector<double> a1{1, 2, 3}, p1{2, 2, 2};
    std::vector<double> a2{2, 2, 2}, p2{2, 2, 2};
    std::vector<Metrics> parts{compute_metrics(a1, p1), compute_metrics(a2, p2)};
    auto m = mean_metrics(parts);
    CHECK(m.mae == doctest::Approx(1.0 / 3.0));
    CHECK(m.n == 6);
}
