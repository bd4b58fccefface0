#include "icetes/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace icetes {

namespace {

// L1-thresholded numerator of the optimal leaf weight
inline double shrink(double g, double alpha) {
    if (g > alpha) return g - alpha;
    if (g < -alpha) return g + alpha;
    return 0.0;
}

inline double leaf_score(double g, double h, double lambda, double alpha) {
    const double t = shrink(g, alpha);
    return t * t / (h + lambda);
}

struct Split {
    double gain = 0.0;
    int feature = -1;
    double threshold = 0.0;
};

}  // namespace

DecisionTree DecisionTree::fit(std::span<const double> rows, std::size_t p,
                               std::span<const double> g, std::span<const double> h,
                               std::span<const std::size_t> indices, const TreeParams& params,
                               Rng& rng) {
    DecisionTree tree;

    struct Work {
        std::vector<std::size_t> idx;
        int depth;
        int node;
    };

    std::vector<std::size_t> feature_pool(p);
    std::iota(feature_pool.begin(), feature_pool.end(), 0);
    const std::size_t n_sample_features =
        params.max_features < 0 ? p : std::min<std::size_t>(p, std::size_t(std::max(1, params.max_features)));

    tree.nodes_.emplace_back();
    std::vector<Work> stack;
    stack.push_back({{indices.begin(), indices.end()}, 0, 0});

    std::vector<std::size_t> order;
    while (!stack.empty()) {
        Work w = std::move(stack.back());
        stack.pop_back();

        double G = 0.0, H = 0.0;
        for (std::size_t i : w.idx) {
            G += g[i];
            H += h[i];
        }

        auto make_leaf = [&]() {
            Node& node = tree.nodes_[std::size_t(w.node)];
            node.feature = -1;
            node.weight = H > 0.0 ? -shrink(G, params.reg_alpha) / (H + params.reg_lambda) : 0.0;
        };

        if (w.depth >= params.max_depth || w.idx.size() < std::size_t(params.min_samples_split) ||
            w.idx.size() < 2) {
            make_leaf();
            continue;
        }

        // feature order for this node: seeded permutation when subsampling,
        // ascending otherwise. The subset size is a lower bound: if the first
        // max_features candidates admit no valid split (constant columns),
        // inspection continues down the permutation.
        std::vector<std::size_t> candidates = feature_pool;
        if (n_sample_features < p) {
            for (std::size_t k = 0; k + 1 < candidates.size(); ++k) {
                std::size_t j = k + std::size_t(rng.uniform_index(candidates.size() - k));
                std::swap(candidates[k], candidates[j]);
            }
        }

        const double parent_score = leaf_score(G, H, params.reg_lambda, params.reg_alpha);
        Split best;
        std::size_t inspected = 0;
        for (std::size_t f : candidates) {
            if (inspected >= n_sample_features && best.feature >= 0) break;
            ++inspected;
            order = w.idx;
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                double xa = rows[a * p + f], xb = rows[b * p + f];
                if (xa != xb) return xa < xb;
                return a < b;
            });
            double GL = 0.0, HL = 0.0;
            for (std::size_t i = 0; i + 1 < order.size(); ++i) {
                GL += g[order[i]];
                HL += h[order[i]];
                const double xl = rows[order[i] * p + f];
                const double xr = rows[order[i + 1] * p + f];
                if (xl == xr) continue;
                const std::size_t n_left = i + 1, n_right = order.size() - n_left;
                if (n_left < std::size_t(params.min_samples_leaf) ||
                    n_right < std::size_t(params.min_samples_leaf))
                    continue;
                const double GR = G - GL, HR = H - HL;
                if (HL < params.min_child_weight || HR < params.min_child_weight) continue;
                const double gain = leaf_score(GL, HL, params.reg_lambda, params.reg_alpha) +
                                    leaf_score(GR, HR, params.reg_lambda, params.reg_alpha) -
                                    parent_score;
                if (gain > best.gain + 1e-12) {
                    best.gain = gain;
                    best.feature = int(f);
                    best.threshold = xl + 0.5 * (xr - xl);
                }
            }
        }

        if (best.feature < 0) {
            make_leaf();
            continue;
        }

        std::vector<std::size_t> left_idx, right_idx;
        for (std::size_t i : w.idx) {
            if (rows[i * p + std::size_t(best.feature)] <= best.threshold) left_idx.push_back(i);
            else right_idx.push_back(i);
        }

        const int left_node = int(tree.nodes_.size());
        tree.nodes_.emplace_back();
        const int right_node = int(tree.nodes_.size());
        tree.nodes_.emplace_back();
        Node& node = tree.nodes_[std::size_t(w.node)];
        node.feature = best.feature;
        node.threshold = best.threshold;
        node.left = left_node;
        node.right = right_node;

        stack.push_back({std::move(right_idx), w.depth + 1, right_node});
        stack.push_back({std::move(left_idx), w.depth + 1, left_node});
    }
    return tree;
}

double DecisionTree::predict(std::span<const double> x) const {
    int i = 0;
    while (nodes_[std::size_t(i)].feature >= 0) {
        const Node& n = nodes_[std::size_t(i)];
        i = x[std::size_t(n.feature)] <= n.threshold ? n.left : n.right;
    }
    return nodes_[std::size_t(i)].weight;
}

}  // namespace icetes
