#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "icetes/rng.hpp"

namespace icetes {

// CART-style regression tree on gradient/hessian pairs, which covers both
// uses in this project:
//   - plain regression (random forest member): g = -y, h = 1, lambda =
//     alpha = 0, so a leaf weight -G/H is the target mean and the split gain
//     reduces to SSE reduction;
//   - boosted member: second-order gain with L1/L2 regularization on leaf
//     weights.
struct TreeParams {
    int max_depth = 6;
    int min_samples_split = 2;
    int min_samples_leaf = 1;
    double min_child_weight = 0.0;  // minimum hessian sum per side
    double reg_lambda = 0.0;
    double reg_alpha = 0.0;
    int max_features = -1;  // features sampled per split; -1 = all
};

class DecisionTree {
public:
    struct Node {
        int feature = -1;        // -1 for leaves
        double threshold = 0.0;  // go left if x[feature] <= threshold
        int left = -1;
        int right = -1;
        double weight = 0.0;  // leaf value
    };

    // rows: row-major sample matrix, n x p. Indices choose the training
    // subset (bootstrap sample). Deterministic for a fixed rng state.
    static DecisionTree fit(std::span<const double> rows, std::size_t p, std::span<const double> g,
                            std::span<const double> h, std::span<const std::size_t> indices,
                            const TreeParams& params, Rng& rng);

    double predict(std::span<const double> x) const;
    std::size_t node_count() const { return nodes_.size(); }

private:
    std::vector<Node> nodes_;
};

}  // namespace icetes
