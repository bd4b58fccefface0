#pragma once

#include <string>
#include <vector>

#include "icetes/features.hpp"
#include "icetes/metrics.hpp"
#include "icetes/params.hpp"

namespace icetes {

enum class FoldMode {
    Chronological,  // contiguous blocks over time-ordered samples (default:
                    // keeps hourly autocorrelation from leaking across folds)
    Shuffled,       // seed-derived random assignment
};

// Fold membership as index lists into `samples`. Assignment is derived from
// sample timestamps, not input order, so reordered samples fold identically.
// Folds partition the index set into k blocks of size n/k (+-1).
std::vector<std::vector<std::size_t>> kfold_assignments(const SampleSet& samples, int k,
                                                        FoldMode mode, std::uint64_t seed);

// k-fold cross validation: train on k-1 folds, score the held-out fold, and
// average the per-fold metrics. Deterministic per (samples, config, seed).
Metrics kfold_cv(const std::string& algorithm, const Params& params, const FeatureMask& mask,
                 const SampleSet& samples, int k, std::uint64_t seed,
                 FoldMode mode = FoldMode::Chronological);

struct GridSearchResult {
    Params best_params;
    Metrics best_metrics;
    std::size_t evaluations = 0;
};

// Exhaustive Cartesian product, each point scored by kfold_cv; the minimum
// mean MAE wins and ties go to the earliest point in grid enumeration order.
GridSearchResult grid_search(const std::string& algorithm, const HyperParamGrid& grid,
                             const FeatureMask& mask, const SampleSet& samples, int k,
                             std::uint64_t seed, FoldMode mode = FoldMode::Chronological);

struct MaskScore {
    FeatureMask mask;
    Metrics metrics;
};

// Scores all 127 feature combinations and returns them ranked by ascending
// MAE; exact ties order by cardinality, then canonical feature order.
std::vector<MaskScore> feature_search(const std::string& algorithm, const Params& params,
                                      const SampleSet& samples, int k, std::uint64_t seed,
                                      FoldMode mode = FoldMode::Chronological);

struct AlgorithmScore {
    std::string algorithm;
    FeatureMask mask;
    Params tuned_params;
    Metrics metrics;
    double train_seconds = 0.0;  // mean wall time of a full-data fit
};

// Tunes each algorithm over its grid, then ranks by CV MAE. `masks` holds
// either one mask for all algorithms or one per algorithm. Wall times are
// measured, so they are the one non-reproducible field.
std::vector<AlgorithmScore> compare_algorithms(const SampleSet& samples,
                                               const std::vector<std::string>& algorithms,
                                               const std::vector<FeatureMask>& masks,
                                               const std::vector<HyperParamGrid>& grids, int k,
                                               std::uint64_t seed,
                                               FoldMode mode = FoldMode::Chronological);

}  // namespace icetes
