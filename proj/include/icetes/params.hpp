#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace icetes {

// Hyperparameter values are numeric or categorical (e.g. a boosting
// objective name). Stored sparsely; each algorithm reads what it knows and
// falls back to documented defaults.
using ParamValue = std::variant<double, std::string>;

class Params {
public:
    Params() = default;

    void set(const std::string& key, double v) { kv_[key] = v; }
    void set(const std::string& key, const std::string& v) { kv_[key] = v; }
    void set(const std::string& key, const char* v) { kv_[key] = std::string(v); }

    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    double get_num(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::string get_str(const std::string& key, const std::string& fallback) const;

    const std::map<std::string, ParamValue>& entries() const { return kv_; }
    std::string to_string() const;  // "k=v k=v ..." in key order

private:
    std::map<std::string, ParamValue> kv_;
};

// Ordered hyperparameter grid. Enumeration order is part of the contract:
// the Cartesian product iterates with the first declared axis outermost, and
// grid search breaks metric ties by the first point in this order.
struct HyperParamGrid {
    std::string algorithm;
    std::vector<std::pair<std::string, std::vector<ParamValue>>> axes;

    std::size_t size() const;
    Params point(std::size_t index) const;  // row-major, first axis outermost

    // Shipped defaults per algorithm ("rf", "xgb", "mlp", "svr").
    static HyperParamGrid defaults_for(const std::string& algorithm);
};

}  // namespace icetes
