#include "hypercover/network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hypercover {

std::string to_string(Activation a) {
    switch (a) {
        case Activation::Relu: return "relu";
        case Activation::Identity: return "identity";
        case Activation::Softmax: return "softmax";
    }
    return "?";
}

std::pair<Eigen::MatrixXd, Eigen::VectorXd> cube_to_inequalities(const Hypercube& cube) {
    const int n = static_cast<int>(cube.dims());
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(2 * n, n);
    Eigen::VectorXd v(2 * n);
    for (int j = 0; j < n; ++j) {
        W(j, j) = 1.0;           // x_j - upper_j <= 0
        v(j) = -cube.upper[j];
        W(n + j, j) = -1.0;      // lower_j - x_j <= 0
        v(n + j) = cube.lower[j];
    }
    return {std::move(W), std::move(v)};
}

double theta_k(const Eigen::MatrixXd& weights, const Eigen::VectorXd& biases,
               const Eigen::VectorXd& x) {
    if (weights.cols() != x.size())
        throw std::invalid_argument("theta_k: dimension mismatch");
    return (weights * x + biases).cwiseMax(0.0).sum();
}

namespace {

// class-major list of (leaf id, class) for every class-assigned leaf
std::vector<std::pair<int, int>> assigned_leaves_class_major(const Cover& cover) {
    std::vector<std::pair<int, int>> out;
    for (int c = 0; c < cover.n_classes; ++c) {
        for (std::size_t i = 0; i < cover.leaves.size(); ++i) {
            const Hypercube& leaf = cover.leaves[i];
            if (leaf.assigned_class != c) continue;
            if (leaf.status == CubeStatus::Homogeneous ||
                leaf.status == CubeStatus::Violating ||
                leaf.status == CubeStatus::Filled)
                out.emplace_back(static_cast<int>(i), c);
        }
    }
    return out;
}

}  // namespace

CompiledNetwork compile(const Cover& cover, double epsilon) {
    if (epsilon <= 0.0) epsilon = cover.config.effective_epsilon();
    if (epsilon <= 0.0) throw std::invalid_argument("compile: epsilon must be positive");

    auto order = assigned_leaves_class_major(cover);
    const int n = cover.n_dims;
    const int m = cover.n_classes;
    const int K = static_cast<int>(order.size());

    CompiledNetwork net;
    net.n_inputs = n;
    net.n_classes = m;
    net.epsilon = epsilon;
    net.class_blocks.assign(m, {});
    for (const auto& [leaf_id, c] : order) net.class_blocks[c].push_back(leaf_id);
    for (int c = 0; c < m; ++c)
        if (net.class_blocks[c].empty())
            throw std::runtime_error("compile: class " + std::to_string(c) +
                                     " has no support");

    // dense layer 2 dominates memory at K x 2nK entries
    double entries = static_cast<double>(K) * 2.0 * n * K;
    if (entries > 1e8)
        throw std::runtime_error(
            "compile: dense layers too large to materialize; use BoxEvaluator");

    AffineLayer l1;
    l1.activation = Activation::Relu;
    l1.weights = Eigen::MatrixXd::Zero(2 * n * K, n);
    l1.biases = Eigen::VectorXd::Zero(2 * n * K);
    for (int k = 0; k < K; ++k) {
        auto [W, v] = cube_to_inequalities(cover.leaves[order[k].first]);
        l1.weights.block(2 * n * k, 0, 2 * n, n) = W;
        l1.biases.segment(2 * n * k, 2 * n) = v;
    }

    AffineLayer l2;
    l2.activation = Activation::Relu;
    l2.weights = Eigen::MatrixXd::Zero(K, 2 * n * K);
    l2.biases = Eigen::VectorXd::Zero(K);
    for (int k = 0; k < K; ++k)
        l2.weights.block(k, 2 * n * k, 1, 2 * n).setOnes();

    AffineLayer l3;
    l3.activation = Activation::Relu;
    l3.weights = Eigen::MatrixXd::Zero(K, K);
    l3.biases = Eigen::VectorXd::Ones(K);
    for (int k = 0; k < K; ++k) l3.weights(k, k) = -1.0 / epsilon;

    AffineLayer l4;
    l4.activation = Activation::Softmax;
    l4.weights = Eigen::MatrixXd::Zero(m, K);
    l4.biases = Eigen::VectorXd::Zero(m);
    for (int k = 0; k < K; ++k) l4.weights(order[k].second, k) = 1.0;

    net.layers = {std::move(l1), std::move(l2), std::move(l3), std::move(l4)};
    return net;
}

Prediction softmax_predict(const Eigen::VectorXd& pre) {
    Prediction p;
    double hi = pre.maxCoeff();
    Eigen::VectorXd e = (pre.array() - hi).exp();
    p.scores = e / e.sum();
    p.predicted = 0;
    for (int i = 1; i < p.scores.size(); ++i)
        if (p.scores(i) > p.scores(p.predicted)) p.predicted = i;
    return p;
}

Prediction forward(const CompiledNetwork& net, const Eigen::VectorXd& x) {
    if (x.size() != net.n_inputs)
        throw std::invalid_argument("forward: input dimension mismatch");
    Eigen::VectorXd z = x;
    for (std::size_t li = 0; li < net.layers.size(); ++li) {
        const AffineLayer& layer = net.layers[li];
        z = layer.weights * z + layer.biases;
        if (layer.activation == Activation::Relu)
            z = z.cwiseMax(0.0);
        else if (layer.activation == Activation::Softmax)
            return softmax_predict(z);
    }
    return softmax_predict(z);  // nets without a softmax tail still predict
}

std::optional<int> geometric_classify(const Cover& cover, std::span<const double> x) {
    auto idx = cover.find_leaf(x);
    if (!idx) return std::nullopt;
    int c = cover.leaves[*idx].assigned_class;
    if (c < 0) return std::nullopt;
    return c;
}

BoxEvaluator::BoxEvaluator(const Cover& cover, double epsilon) {
    epsilon_ = epsilon > 0.0 ? epsilon : cover.config.effective_epsilon();
    if (epsilon_ <= 0.0) throw std::invalid_argument("BoxEvaluator: epsilon must be positive");
    n_inputs_ = cover.n_dims;
    n_classes_ = cover.n_classes;
    auto order = assigned_leaves_class_major(cover);
    lower_.reserve(order.size() * n_inputs_);
    upper_.reserve(order.size() * n_inputs_);
    cls_.reserve(order.size());
    for (const auto& [leaf_id, c] : order) {
        const Hypercube& leaf = cover.leaves[leaf_id];
        lower_.insert(lower_.end(), leaf.lower.begin(), leaf.lower.end());
        upper_.insert(upper_.end(), leaf.upper.begin(), leaf.upper.end());
        cls_.push_back(c);
    }
}

Eigen::VectorXd BoxEvaluator::class_scores(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != n_inputs_)
        throw std::invalid_argument("BoxEvaluator: input dimension mismatch");
    Eigen::VectorXd scores = Eigen::VectorXd::Zero(n_classes_);
    const int n = n_inputs_;
    for (std::size_t k = 0; k < cls_.size(); ++k) {
        const double* lo = &lower_[k * n];
        const double* up = &upper_[k * n];
        // residual order mirrors the dense layers: upper rows then lower rows
        double theta = 0.0;
        for (int j = 0; j < n; ++j) theta += std::max(0.0, x[j] - up[j]);
        for (int j = 0; j < n; ++j) theta += std::max(0.0, lo[j] - x[j]);
        double mu = std::max(0.0, (-1.0 / epsilon_) * theta + 1.0);
        scores(cls_[k]) += mu;
    }
    return scores;
}

Eigen::VectorXd BoxEvaluator::class_scores_unclamped(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != n_inputs_)
        throw std::invalid_argument("BoxEvaluator: input dimension mismatch");
    Eigen::VectorXd scores = Eigen::VectorXd::Zero(n_classes_);
    const int n = n_inputs_;
    for (std::size_t k = 0; k < cls_.size(); ++k) {
        const double* lo = &lower_[k * n];
        const double* up = &upper_[k * n];
        double theta = 0.0;
        for (int j = 0; j < n; ++j) theta += std::max(0.0, x[j] - up[j]);
        for (int j = 0; j < n; ++j) theta += std::max(0.0, lo[j] - x[j]);
        scores(cls_[k]) += 1.0 - theta / epsilon_;
    }
    return scores;
}

Prediction BoxEvaluator::forward(std::span<const double> x) const {
    return softmax_predict(class_scores(x));
}

}  // namespace hypercover
