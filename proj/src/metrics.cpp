#include "icetes/metrics.hpp"

#include <cmath>
#include <string>

#include "icetes/errors.hpp"

namespace icetes {

Metrics compute_metrics(std::span<const double> actual, std::span<const double> predicted) {
    if (actual.size() != predicted.size()) {
        throw ValidationError("metrics: length mismatch (" + std::to_string(actual.size()) + " vs " +
                              std::to_string(predicted.size()) + ")");
    }
    if (actual.empty()) throw ValidationError("metrics: empty input");

    double abs_sum = 0.0, sq_sum = 0.0, actual_sum = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double d = actual[i] - predicted[i];
        abs_sum += std::abs(d);
        sq_sum += d * d;
        actual_sum += actual[i];
    }
    Metrics m;
    m.n = actual.size();
    m.mean_actual = actual_sum / double(m.n);
    m.mae = abs_sum / double(m.n);
    m.rmse = std::sqrt(sq_sum / double(m.n));
    if (m.mean_actual != 0.0) {
        m.cvmae = m.mae / m.mean_actual;
        m.cvrmse = m.rmse / m.mean_actual;
        m.cv_defined = true;
    }
    return m;
}

Metrics mean_metrics(std::span<const Metrics> parts) {
    if (parts.empty()) throw ValidationError("metrics: empty fold list");
    Metrics out;
    bool all_cv = true;
    for (const auto& p : parts) {
        out.mae += p.mae;
        out.rmse += p.rmse;
        out.cvmae += p.cvmae;
        out.cvrmse += p.cvrmse;
        out.mean_actual += p.mean_actual;
        out.n += p.n;
        all_cv = all_cv && p.cv_defined;
    }
    const double k = double(parts.size());
    out.mae /= k;
    out.rmse /= k;
    out.cvmae /= k;
    out.cvrmse /= k;
    out.mean_actual /= k;
    out.cv_defined = all_cv;
    return out;
}

}  // namespace icetes
