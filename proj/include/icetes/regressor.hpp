#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "icetes/params.hpp"

namespace icetes {

// Flat n x p sample matrix with targets.
struct TrainMatrix {
    std::size_t n_features = 0;
    std::vector<double> x;  // row-major
    std::vector<double> y;

    std::size_t n_rows() const { return n_features ? y.size() : 0; }
    std::span<const double> row(std::size_t i) const {
        return {x.data() + i * n_features, n_features};
    }
    void push_row(std::span<const double> features, double target);
};

// A fitted predictor. Immutable after training; safe to share across
// threads. predict_raw may go negative (trees on residuals, linear output
// layers); the clamp to physical loads happens in predict() below.
class Regressor {
public:
    virtual ~Regressor() = default;
    virtual std::string algorithm() const = 0;
    virtual std::size_t n_features() const = 0;
    virtual double predict_raw(std::span<const double> features) const = 0;
};

// Bootstrap-aggregated regression trees with per-split random feature
// subsets. Parameters (Beijing-case tuning grid names): n_estimators,
// max_depth, min_sample_split, min_samples_leaf; optional max_features
// (default: p/3, at least 1).
std::unique_ptr<Regressor> train_random_forest(const TrainMatrix& data, const Params& params,
                                               std::uint64_t seed);

// Gradient-boosted trees on residuals, second-order updates with L1/L2
// regularization. Parameters: max_depth, min_child_weight, reg_alpha,
// reg_lambda, objective ("reg:squarederror" | "reg:tweedie"); optional
// learning_rate (0.3), n_rounds (100), tweedie_variance_power (1.5).
std::unique_ptr<Regressor> train_gradient_boost(const TrainMatrix& data, const Params& params,
                                                std::uint64_t seed);

// Fully-connected ReLU network trained by backpropagation (Adam, minibatch;
// inputs and target standardized internally). Parameters: n_layer, n_neuron;
// optional epochs (200), learning_rate (1e-3), batch_size (32).
std::unique_ptr<Regressor> train_mlp(const TrainMatrix& data, const Params& params,
                                     std::uint64_t seed);

// Registry dispatch over algorithm ids "rf" | "xgb" | "mlp". "svr" is a
// known id without a shipped implementation and reports that distinctly;
// anything else is an unknown-algorithm error. Requires >= 2 samples.
std::unique_ptr<Regressor> train_regressor(const std::string& algorithm, const Params& params,
                                           const TrainMatrix& data, std::uint64_t seed);

bool algorithm_known(const std::string& algorithm);

// Model output clamped to physical range: negative raw predictions map to 0.
// Throws ValidationError when the feature count does not match the model.
double predict(const Regressor& model, std::span<const double> features);

}  // namespace icetes
