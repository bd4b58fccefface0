#include "icetes/params.hpp"

#include <cmath>
#include <cstdio>

#include "icetes/errors.hpp"

namespace icetes {

double Params::get_num(const std::string& key, double fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    if (const double* d = std::get_if<double>(&it->second)) return *d;
    throw ConfigError("hyperparameter '" + key + "' is not numeric");
}

int Params::get_int(const std::string& key, int fallback) const {
    double v = get_num(key, double(fallback));
    return int(std::lround(v));
}

std::string Params::get_str(const std::string& key, const std::string& fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    if (const std::string* s = std::get_if<std::string>(&it->second)) return *s;
    throw ConfigError("hyperparameter '" + key + "' is not categorical");
}

std::string Params::to_string() const {
    std::string out;
    for (const auto& [k, v] : kv_) {
        if (!out.empty()) out += " ";
        out += k + "=";
        if (const double* d = std::get_if<double>(&v)) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%g", *d);
            out += buf;
        } else {
            out += std::get<std::string>(v);
        }
    }
    return out;
}

std::size_t HyperParamGrid::size() const {
    std::size_t n = 1;
    for (const auto& [_, values] : axes) n *= values.size();
    return n;
}

Params HyperParamGrid::point(std::size_t index) const {
    Params p;
    // first axis outermost: divide by the product of later axis sizes
    std::size_t stride = size();
    for (const auto& [key, values] : axes) {
        stride /= values.size();
        std::size_t i = (index / stride) % values.size();
        if (const double* d = std::get_if<double>(&values[i])) p.set(key, *d);
        else p.set(key, std::get<std::string>(values[i]));
    }
    return p;
}

HyperParamGrid HyperParamGrid::defaults_for(const std::string& algorithm) {
    auto nums = [](std::initializer_list<double> vs) {
        std::vector<ParamValue> out;
        for (double v : vs) out.emplace_back(v);
        return out;
    };
    auto strs = [](std::initializer_list<const char*> vs) {
        std::vector<ParamValue> out;
        for (const char* v : vs) out.emplace_back(std::string(v));
        return out;
    };
    HyperParamGrid g;
    g.algorithm = algorithm;
    if (algorithm == "rf") {
        g.axes = {{"n_estimators", nums({50, 80, 100, 150, 200})},
                  {"max_depth", nums({6, 8, 10, 12, 15})},
                  {"min_sample_split", nums({5, 10, 20, 49})},
                  {"min_samples_leaf", nums({2, 5, 10})}};
    } else if (algorithm == "xgb") {
        g.axes = {{"max_depth", nums({3, 4, 5, 6, 7})},
                  {"min_child_weight", nums({0.01, 0.1, 1, 10})},
                  {"reg_alpha", nums({0, 0.01, 1, 10})},
                  {"reg_lambda", nums({0, 0.01, 1, 10})},
                  {"objective", strs({"reg:squarederror", "reg:tweedie"})}};
    } else if (algorithm == "mlp") {
        g.axes = {{"n_layer", nums({1, 2, 3})}, {"n_neuron", nums({10, 100, 500})}};
    } else if (algorithm == "svr") {
        // registry slot only; no reference implementation ships
        g.axes = {{"kernel", strs({"poly", "rbf", "sigmoid"})},
                  {"C", nums({0.1, 1, 10, 100})},
                  {"epsilon", nums({0.01, 0.1, 1, 10})}};
    } else {
        throw ConfigError("no default hyperparameter grid for algorithm '" + algorithm + "'");
    }
    return g;
}

}  // namespace icetes
