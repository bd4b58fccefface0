#pragma once

#include <cstddef>
#include <span>

namespace icetes {

// Prediction error summary. CV variants normalize by the mean of the actual
// values; when that mean is zero they are flagged undefined instead of
// produced as infinities.
struct Metrics {
    double mae = 0.0;
    double rmse = 0.0;
    double cvmae = 0.0;
    double cvrmse = 0.0;
    bool cv_defined = false;
    std::size_t n = 0;
    double mean_actual = 0.0;
};

// Exact formula evaluation:
//   MAE  = (1/n) sum |a_i - p_i|          CVMAE  = MAE / mean(a)
//   RMSE = sqrt((1/n) sum (a_i - p_i)^2)  CVRMSE = RMSE / mean(a)
// Lengths must match and be non-zero.
Metrics compute_metrics(std::span<const double> actual, std::span<const double> predicted);

// Unweighted mean of per-fold (or per-group) metrics; n sums.
Metrics mean_metrics(std::span<const Metrics> parts);

}  // namespace icetes
