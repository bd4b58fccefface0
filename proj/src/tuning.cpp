#include "icetes/tuning.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "icetes/errors.hpp"
#include "icetes/parallel.hpp"
#include "icetes/rng.hpp"

namespace icetes {

std::vector<std::vector<std::size_t>> kfold_assignments(const SampleSet& samples, int k,
                                                        FoldMode mode, std::uint64_t seed) {
    const std::size_t n = samples.size();
    if (k < 2) throw ValidationError("k-fold: k must be >= 2");
    if (std::size_t(k) > n)
        throw ValidationError("k-fold: k = " + std::to_string(k) + " exceeds sample count " +
                              std::to_string(n));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return samples.timestamps[a] < samples.timestamps[b];
    });
    if (mode == FoldMode::Shuffled) {
        Rng rng(mix_seed(seed, 0xF01D));
        rng.shuffle(order);
    }

    std::vector<std::vector<std::size_t>> folds;
    folds.resize(std::size_t(k));
    for (std::size_t f = 0; f < std::size_t(k); ++f) {
        const std::size_t lo = f * n / std::size_t(k);
        const std::size_t hi = (f + 1) * n / std::size_t(k);
        folds[f].assign(order.begin() + long(lo), order.begin() + long(hi));
    }
    return folds;
}

Metrics kfold_cv(const std::string& algorithm, const Params& params, const FeatureMask& mask,
                 const SampleSet& samples, int k, std::uint64_t seed, FoldMode mode) {
    auto folds = kfold_assignments(samples, k, mode, seed);
    const TrainMatrix full = samples.to_matrix(mask);

    std::vector<Metrics> fold_metrics(folds.size());
    std::vector<char> in_fold(samples.size());
    for (std::size_t f = 0; f < folds.size(); ++f) {
        std::fill(in_fold.begin(), in_fold.end(), 0);
        for (std::size_t i : folds[f]) in_fold[i] = 1;

        TrainMatrix train;
        train.n_features = full.n_features;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            if (!in_fold[i]) train.push_row(full.row(i), full.y[i]);
        }
        auto model = train_regressor(algorithm, params, train, mix_seed(seed, f));

        std::vector<double> actual, predicted;
        actual.reserve(folds[f].size());
        predicted.reserve(folds[f].size());
        for (std::size_t i : folds[f]) {
            actual.push_back(full.y[i]);
            predicted.push_back(predict(*model, full.row(i)));
        }
        fold_metrics[f] = compute_metrics(actual, predicted);
    }
    return mean_metrics(fold_metrics);
}

GridSearchResult grid_search(const std::string& algorithm, const HyperParamGrid& grid,
                             const FeatureMask& mask, const SampleSet& samples, int k,
                             std::uint64_t seed, FoldMode mode) {
    const std::size_t n_points = grid.size();
    if (n_points == 0 || grid.axes.empty()) throw ValidationError("grid search: empty grid");

    std::vector<Metrics> scores(n_points);
    std::vector<std::exception_ptr> failures(n_points);
    parallel_for(n_points, [&](std::size_t i) {
        try {
            scores[i] = kfold_cv(algorithm, grid.point(i), mask, samples, k, seed, mode);
        } catch (...) {
            failures[i] = std::current_exception();
        }
    });
    for (auto& f : failures)
        if (f) std::rethrow_exception(f);

    std::size_t best = 0;
    for (std::size_t i = 1; i < n_points; ++i) {
        if (scores[i].mae < scores[best].mae) best = i;  // ties keep the earlier point
    }
    return GridSearchResult{grid.point(best), scores[best], n_points};
}

std::vector<MaskScore> feature_search(const std::string& algorithm, const Params& params,
                                      const SampleSet& samples, int k, std::uint64_t seed,
                                      FoldMode mode) {
    const auto masks = FeatureMask::all_masks();
    std::vector<MaskScore> out(masks.size());
    std::vector<std::exception_ptr> failures(masks.size());
    parallel_for(masks.size(), [&](std::size_t i) {
        try {
            out[i] = MaskScore{masks[i], kfold_cv(algorithm, params, masks[i], samples, k, seed, mode)};
        } catch (...) {
            failures[i] = std::current_exception();
        }
    });
    for (auto& f : failures)
        if (f) std::rethrow_exception(f);

    std::stable_sort(out.begin(), out.end(), [](const MaskScore& a, const MaskScore& b) {
        if (a.metrics.mae != b.metrics.mae) return a.metrics.mae < b.metrics.mae;
        return FeatureMask::tie_less(a.mask, b.mask);
    });
    return out;
}

std::vector<AlgorithmScore> compare_algorithms(const SampleSet& samples,
                                               const std::vector<std::string>& algorithms,
                                               const std::vector<FeatureMask>& masks,
                                               const std::vector<HyperParamGrid>& grids, int k,
                                               std::uint64_t seed, FoldMode mode) {
    if (algorithms.empty()) throw ValidationError("compare_algorithms: no algorithms given");
    if (masks.size() != 1 && masks.size() != algorithms.size())
        throw ValidationError("compare_algorithms: need one mask or one per algorithm");
    if (grids.size() != algorithms.size())
        throw ValidationError("compare_algorithms: need one grid per algorithm");

    std::vector<AlgorithmScore> out;
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
        const FeatureMask& mask = masks.size() == 1 ? masks[0] : masks[a];
        auto result = grid_search(algorithms[a], grids[a], mask, samples, k,
                                  mix_seed(seed, a), mode);

        // mean wall time of a full-data fit with the tuned parameters
        const TrainMatrix full = samples.to_matrix(mask);
        const int repeats = 3;
        auto t0 = std::chrono::steady_clock::now();
        for (int r = 0; r < repeats; ++r) {
            auto model = train_regressor(algorithms[a], result.best_params, full,
                                         mix_seed(seed, a * 101 + std::size_t(r)));
            (void)model;
        }
        auto t1 = std::chrono::steady_clock::now();
        const double secs = std::chrono::duration<double>(t1 - t0).count() / repeats;

        out.push_back(AlgorithmScore{algorithms[a], mask, result.best_params, result.best_metrics, secs});
    }
    std::stable_sort(out.begin(), out.end(), [](const AlgorithmScore& a, const AlgorithmScore& b) {
        return a.metrics.mae < b.metrics.mae;
    });
    return out;
}

}  // namespace icetes
