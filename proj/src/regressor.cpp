#include "icetes/regressor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "icetes/errors.hpp"
#include "icetes/parallel.hpp"
#include "icetes/rng.hpp"
#include "icetes/tree.hpp"

namespace icetes {

void TrainMatrix::push_row(std::span<const double> features, double target) {
    if (n_features == 0) n_features = features.size();
    if (features.size() != n_features) throw ValidationError("sample with inconsistent feature count");
    x.insert(x.end(), features.begin(), features.end());
    y.push_back(target);
}

namespace {

void check_trainable(const TrainMatrix& data) {
    if (data.n_rows() < 2) throw ValidationError("training requires at least 2 samples");
    if (data.n_features == 0) throw ValidationError("training requires at least 1 feature");
    for (double v : data.x)
        if (!std::isfinite(v)) throw ValidationError("non-finite feature value in training data");
    for (double v : data.y)
        if (!std::isfinite(v)) throw ValidationError("non-finite target value in training data");
}

class ForestModel : public Regressor {
public:
    ForestModel(std::size_t p, std::vector<DecisionTree> trees)
        : p_(p), trees_(std::move(trees)) {}
    std::string algorithm() const override { return "rf"; }
    std::size_t n_features() const override { return p_; }
    double predict_raw(std::span<const double> x) const override {
        double sum = 0.0;
        for (const auto& t : trees_) sum += t.predict(x);
        return sum / double(trees_.size());
    }

private:
    std::size_t p_;
    std::vector<DecisionTree> trees_;
};

class BoostModel : public Regressor {
public:
    BoostModel(std::size_t p, double base, double lr, bool log_link, std::vector<DecisionTree> trees)
        : p_(p), base_(base), lr_(lr), log_link_(log_link), trees_(std::move(trees)) {}
    std::string algorithm() const override { return "xgb"; }
    std::size_t n_features() const override { return p_; }
    double predict_raw(std::span<const double> x) const override {
        double f = base_;
        for (const auto& t : trees_) f += lr_ * t.predict(x);
        return log_link_ ? std::exp(f) : f;
    }

private:
    std::size_t p_;
    double base_;
    double lr_;
    bool log_link_;
    std::vector<DecisionTree> trees_;
};

class MlpModel : public Regressor {
public:
    // weights[l]: (fan_in+1) x fan_out, bias packed as last row
    MlpModel(std::size_t p, std::vector<std::vector<double>> weights, std::vector<std::size_t> widths,
             std::vector<double> x_mean, std::vector<double> x_std, double y_mean, double y_std)
        : p_(p), weights_(std::move(weights)), widths_(std::move(widths)),
          x_mean_(std::move(x_mean)), x_std_(std::move(x_std)), y_mean_(y_mean), y_std_(y_std) {}
    std::string algorithm() const override { return "mlp"; }
    std::size_t n_features() const override { return p_; }
    double predict_raw(std::span<const double> x) const override {
        std::vector<double> a(p_);
        for (std::size_t i = 0; i < p_; ++i) a[i] = (x[i] - x_mean_[i]) / x_std_[i];
        for (std::size_t l = 0; l < weights_.size(); ++l) {
            const std::size_t fan_in = a.size(), fan_out = widths_[l];
            std::vector<double> z(fan_out, 0.0);
            for (std::size_t j = 0; j < fan_out; ++j) {
                double s = weights_[l][fan_in * fan_out + j];  // bias
                for (std::size_t i = 0; i < fan_in; ++i) s += a[i] * weights_[l][i * fan_out + j];
                z[j] = s;
            }
            const bool last = l + 1 == weights_.size();
            if (!last)
                for (auto& v : z) v = std::max(0.0, v);
            a = std::move(z);
        }
        return a[0] * y_std_ + y_mean_;
    }

private:
    std::size_t p_;
    std::vector<std::vector<double>> weights_;
    std::vector<std::size_t> widths_;
    std::vector<double> x_mean_, x_std_;
    double y_mean_, y_std_;
};

}  // namespace

std::unique_ptr<Regressor> train_random_forest(const TrainMatrix& data, const Params& params,
                                               std::uint64_t seed) {
    check_trainable(data);
    const int n_trees = params.get_int("n_estimators", 100);
    if (n_trees < 1) throw ValidationError("rf: n_estimators must be >= 1");
    TreeParams tp;
    tp.max_depth = params.get_int("max_depth", 10);
    tp.min_samples_split = params.get_int("min_sample_split", 5);
    tp.min_samples_leaf = params.get_int("min_samples_leaf", 2);
    tp.max_features = params.get_int(
        "max_features", int(std::max<std::size_t>(1, data.n_features / 3)));

    const std::size_t n = data.n_rows();
    std::vector<DecisionTree> trees;
    trees.resize(std::size_t(n_trees));
    parallel_for(std::size_t(n_trees), [&](std::size_t t) {
        Rng rng(mix_seed(seed, t));
        std::vector<std::size_t> bootstrap(n);
        for (auto& i : bootstrap) i = std::size_t(rng.uniform_index(n));
        std::sort(bootstrap.begin(), bootstrap.end());
        // g = -y, h = 1: leaf weight is the subsample target mean
        std::vector<double> g(n, 0.0), h(n, 1.0);
        for (std::size_t i = 0; i < n; ++i) g[i] = -data.y[i];
        trees[t] = DecisionTree::fit(data.x, data.n_features, g, h, bootstrap, tp, rng);
    });
    return std::make_unique<ForestModel>(data.n_features, std::move(trees));
}

std::unique_ptr<Regressor> train_gradient_boost(const TrainMatrix& data, const Params& params,
                                                std::uint64_t seed) {
    check_trainable(data);
    const std::string objective = params.get_str("objective", "reg:squarederror");
    const bool tweedie = objective == "reg:tweedie";
    if (!tweedie && objective != "reg:squarederror")
        throw ValidationError("xgb: unknown objective '" + objective + "'");
    const double rho = params.get_num("tweedie_variance_power", 1.5);
    if (tweedie && (rho <= 1.0 || rho >= 2.0))
        throw ValidationError("xgb: tweedie_variance_power must lie in (1,2)");

    TreeParams tp;
    tp.max_depth = params.get_int("max_depth", 6);
    tp.min_child_weight = params.get_num("min_child_weight", 1.0);
    tp.reg_alpha = params.get_num("reg_alpha", 0.0);
    tp.reg_lambda = params.get_num("reg_lambda", 1.0);
    tp.min_samples_split = 2;
    tp.min_samples_leaf = 1;
    tp.max_features = -1;

    const double lr = params.get_num("learning_rate", 0.3);
    const int rounds = params.get_int("n_rounds", 100);
    const std::size_t n = data.n_rows();

    double base = 0.0;
    if (tweedie) {
        double mean = 0.0;
        for (double v : data.y) {
            if (v < 0.0) throw ValidationError("xgb: tweedie objective requires non-negative targets");
            mean += v;
        }
        mean = std::max(mean / double(n), 1e-9);
        base = std::log(mean);
    } else {
        for (double v : data.y) base += v;
        base /= double(n);
    }

    std::vector<double> f(n, base);
    std::vector<double> g(n), h(n);
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);

    Rng rng(mix_seed(seed, 0xB005));
    std::vector<DecisionTree> trees;
    trees.reserve(std::size_t(rounds));
    for (int r = 0; r < rounds; ++r) {
        if (tweedie) {
            for (std::size_t i = 0; i < n; ++i) {
                const double e1 = std::exp((1.0 - rho) * f[i]);
                const double e2 = std::exp((2.0 - rho) * f[i]);
                g[i] = -data.y[i] * e1 + e2;
                h[i] = -(1.0 - rho) * data.y[i] * e1 + (2.0 - rho) * e2;
            }
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                g[i] = f[i] - data.y[i];
                h[i] = 1.0;
            }
        }
        DecisionTree tree = DecisionTree::fit(data.x, data.n_features, g, h, all, tp, rng);
        for (std::size_t i = 0; i < n; ++i) f[i] += lr * tree.predict(data.row(i));
        trees.push_back(std::move(tree));
    }
    return std::make_unique<BoostModel>(data.n_features, base, lr, tweedie, std::move(trees));
}

std::unique_ptr<Regressor> train_mlp(const TrainMatrix& data, const Params& params,
                                     std::uint64_t seed) {
    check_trainable(data);
    const int n_layer = params.get_int("n_layer", 2);
    const int n_neuron = params.get_int("n_neuron", 100);
    if (n_layer < 1 || n_neuron < 1) throw ValidationError("mlp: n_layer and n_neuron must be >= 1");
    const int epochs = params.get_int("epochs", 200);
    const double lr = params.get_num("learning_rate", 1e-3);
    const std::size_t batch_size = std::size_t(params.get_int("batch_size", 32));

    const std::size_t n = data.n_rows(), p = data.n_features;

    std::vector<double> x_mean(p, 0.0), x_std(p, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) x_mean[j] += data.x[i * p + j];
    for (auto& v : x_mean) v /= double(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            const double d = data.x[i * p + j] - x_mean[j];
            x_std[j] += d * d;
        }
    for (auto& v : x_std) v = std::max(std::sqrt(v / double(n)), 1e-9);
    double y_mean = 0.0, y_std = 0.0;
    for (double v : data.y) y_mean += v;
    y_mean /= double(n);
    for (double v : data.y) y_std += (v - y_mean) * (v - y_mean);
    y_std = std::max(std::sqrt(y_std / double(n)), 1e-9);

    std::vector<std::size_t> widths;
    for (int l = 0; l < n_layer; ++l) widths.push_back(std::size_t(n_neuron));
    widths.push_back(1);

    Rng rng(mix_seed(seed, 0x311D));
    std::vector<std::vector<double>> w(widths.size());
    std::size_t fan_in = p;
    for (std::size_t l = 0; l < widths.size(); ++l) {
        const std::size_t fan_out = widths[l];
        w[l].assign((fan_in + 1) * fan_out, 0.0);
        const double scale = std::sqrt(2.0 / double(fan_in));  // He init
        for (std::size_t i = 0; i < fan_in * fan_out; ++i) w[l][i] = scale * rng.normal();
        fan_in = fan_out;
    }

    // Adam state
    std::vector<std::vector<double>> m(w.size()), v(w.size());
    for (std::size_t l = 0; l < w.size(); ++l) {
        m[l].assign(w[l].size(), 0.0);
        v[l].assign(w[l].size(), 0.0);
    }
    const double b1 = 0.9, b2 = 0.999, eps = 1e-8;
    std::int64_t step = 0;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);

    // per-layer activations for one sample
    std::vector<std::vector<double>> act(widths.size() + 1);
    std::vector<std::vector<double>> delta(widths.size());
    std::vector<std::vector<double>> grad(w.size());
    for (std::size_t l = 0; l < w.size(); ++l) grad[l].assign(w[l].size(), 0.0);

    for (int epoch = 0; epoch < epochs; ++epoch) {
        rng.shuffle(order);
        for (std::size_t start = 0; start < n; start += batch_size) {
            const std::size_t end = std::min(n, start + batch_size);
            for (auto& gl : grad) std::fill(gl.begin(), gl.end(), 0.0);

            for (std::size_t bi = start; bi < end; ++bi) {
                const std::size_t row = order[bi];
                act[0].resize(p);
                for (std::size_t j = 0; j < p; ++j)
                    act[0][j] = (data.x[row * p + j] - x_mean[j]) / x_std[j];
                // forward
                for (std::size_t l = 0; l < w.size(); ++l) {
                    const std::size_t fi = act[l].size(), fo = widths[l];
                    act[l + 1].assign(fo, 0.0);
                    for (std::size_t j = 0; j < fo; ++j) {
                        double s = w[l][fi * fo + j];
                        for (std::size_t i = 0; i < fi; ++i) s += act[l][i] * w[l][i * fo + j];
                        act[l + 1][j] = (l + 1 == w.size()) ? s : std::max(0.0, s);
                    }
                }
                // backward, squared error on standardized target
                const double target = (data.y[row] - y_mean) / y_std;
                delta.back().assign(1, act.back()[0] - target);
                for (std::size_t l = w.size(); l-- > 0;) {
                    const std::size_t fi = act[l].size(), fo = widths[l];
                    for (std::size_t j = 0; j < fo; ++j) {
                        const double d = delta[l][j];
                        for (std::size_t i = 0; i < fi; ++i) grad[l][i * fo + j] += act[l][i] * d;
                        grad[l][fi * fo + j] += d;
                    }
                    if (l > 0) {
                        delta[l - 1].assign(fi, 0.0);
                        for (std::size_t i = 0; i < fi; ++i) {
                            if (act[l][i] <= 0.0) continue;  // ReLU gate
                            double s = 0.0;
                            for (std::size_t j = 0; j < fo; ++j) s += w[l][i * fo + j] * delta[l][j];
                            delta[l - 1][i] = s;
                        }
                    }
                }
            }

            ++step;
            const double inv = 1.0 / double(end - start);
            const double bc1 = 1.0 - std::pow(b1, double(step));
            const double bc2 = 1.0 - std::pow(b2, double(step));
            for (std::size_t l = 0; l < w.size(); ++l) {
                for (std::size_t i = 0; i < w[l].size(); ++i) {
                    const double gi = grad[l][i] * inv;
                    m[l][i] = b1 * m[l][i] + (1.0 - b1) * gi;
                    v[l][i] = b2 * v[l][i] + (1.0 - b2) * gi * gi;
                    w[l][i] -= lr * (m[l][i] / bc1) / (std::sqrt(v[l][i] / bc2) + eps);
                }
            }
        }
    }
    return std::make_unique<MlpModel>(p, std::move(w), std::move(widths), std::move(x_mean),
                                      std::move(x_std), y_mean, y_std);
}

bool algorithm_known(const std::string& algorithm) {
    return algorithm == "rf" || algorithm == "xgb" || algorithm == "mlp" || algorithm == "svr";
}

std::unique_ptr<Regressor> train_regressor(const std::string& algorithm, const Params& params,
                                           const TrainMatrix& data, std::uint64_t seed) {
    if (algorithm == "rf") return train_random_forest(data, params, seed);
    if (algorithm == "xgb") return train_gradient_boost(data, params, seed);
    if (algorithm == "mlp") return train_mlp(data, params, seed);
    if (algorithm == "svr")
        throw ConfigError("algorithm 'svr' is registered but ships without an implementation");
    throw ConfigError("unknown algorithm '" + algorithm + "' (known: rf, xgb, mlp, svr)");
}

double predict(const Regressor& model, std::span<const double> features) {
    if (features.size() != model.n_features()) {
        throw ValidationError("feature count mismatch: model expects " +
                              std::to_string(model.n_features()) + ", got " +
                              std::to_string(features.size()));
    }
    const double raw = model.predict_raw(features);
    if (!std::isfinite(raw)) throw ValidationError("model produced a non-finite prediction");
    return std::max(0.0, raw);
}

}  // namespace icetes
