#include "hypercover/mlp.hpp"

#include <cmath>
#include <stdexcept>

#include "hypercover/rng.hpp"

namespace hypercover {

Mlp mlp_init(int n_inputs, int n_classes, const MlpConfig& config) {
    for (int w : config.hidden_layers)
        if (w <= 0) throw std::invalid_argument("mlp_init: hidden width must be positive");
    if (config.learning_rate <= 0.0)
        throw std::invalid_argument("mlp_init: learning rate must be positive");

    Mlp mlp;
    Rng rng(config.init_seed);
    int fan_in = n_inputs;
    std::vector<int> widths = config.hidden_layers;
    widths.push_back(n_classes);
    for (std::size_t li = 0; li < widths.size(); ++li) {
        AffineLayer layer;
        layer.activation = (li + 1 == widths.size()) ? Activation::Softmax : Activation::Relu;
        layer.weights.resize(widths[li], fan_in);
        double scale = 1.0 / std::sqrt(static_cast<double>(fan_in));
        for (int r = 0; r < layer.weights.rows(); ++r)
            for (int c = 0; c < layer.weights.cols(); ++c)
                layer.weights(r, c) = scale * rng.normal();
        layer.biases = Eigen::VectorXd::Zero(widths[li]);
        mlp.layers.push_back(std::move(layer));
        fan_in = widths[li];
    }
    return mlp;
}

namespace {

// activations per layer input; back() is the softmax output
std::vector<Eigen::VectorXd> forward_trace(const Mlp& mlp, const Eigen::VectorXd& x) {
    std::vector<Eigen::VectorXd> acts;
    acts.push_back(x);
    for (std::size_t li = 0; li < mlp.layers.size(); ++li) {
        const AffineLayer& layer = mlp.layers[li];
        Eigen::VectorXd z = layer.weights * acts.back() + layer.biases;
        if (layer.activation == Activation::Relu) {
            z = z.cwiseMax(0.0);
        } else if (layer.activation == Activation::Softmax) {
            double hi = z.maxCoeff();
            Eigen::VectorXd e = (z.array() - hi).exp();
            z = e / e.sum();
        }
        acts.push_back(std::move(z));
    }
    return acts;
}

}  // namespace

Prediction mlp_predict(const Mlp& mlp, const Eigen::VectorXd& x) {
    if (x.size() != mlp.n_inputs())
        throw std::invalid_argument("mlp_predict: input dimension mismatch");
    auto acts = forward_trace(mlp, x);
    Prediction p;
    p.scores = acts.back();
    p.predicted = 0;
    for (int i = 1; i < p.scores.size(); ++i)
        if (p.scores(i) > p.scores(p.predicted)) p.predicted = i;
    return p;
}

MlpGradients mlp_loss_and_gradients(const Mlp& mlp,
                                    const std::vector<LabeledPoint>& batch) {
    const std::size_t L = mlp.layers.size();
    MlpGradients g;
    g.weight_grads.reserve(L);
    g.bias_grads.reserve(L);
    for (const auto& layer : mlp.layers) {
        g.weight_grads.emplace_back(Eigen::MatrixXd::Zero(layer.weights.rows(),
                                                          layer.weights.cols()));
        g.bias_grads.emplace_back(Eigen::VectorXd::Zero(layer.biases.size()));
    }

    const double inv_b = 1.0 / static_cast<double>(batch.size());
    for (const auto& sample : batch) {
        Eigen::Map<const Eigen::VectorXd> x(sample.coords.data(), sample.coords.size());
        auto acts = forward_trace(mlp, x);
        const Eigen::VectorXd& probs = acts.back();

        double p_true = std::max(probs(sample.label), 1e-300);
        g.loss += -std::log(p_true) * inv_b;

        // softmax + cross-entropy collapses to probs - onehot
        Eigen::VectorXd delta = probs;
        delta(sample.label) -= 1.0;

        for (std::size_t li = L; li-- > 0;) {
            g.weight_grads[li] += inv_b * (delta * acts[li].transpose());
            g.bias_grads[li] += inv_b * delta;
            if (li == 0) break;
            delta = mlp.layers[li].weights.transpose() * delta;
            // relu gate of the previous layer's output
            for (int r = 0; r < delta.size(); ++r)
                if (acts[li](r) <= 0.0) delta(r) = 0.0;
        }
    }
    return g;
}

void mlp_train(Mlp& mlp, const Dataset& train, const MlpConfig& config) {
    if (train.points.empty()) throw std::invalid_argument("mlp_train: empty training set");

    Rng shuffle_rng(splitmix64(config.init_seed ^ 0x9d2c5680u));
    std::vector<std::size_t> order(train.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    const int B = std::max(1, config.batch_size);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        double epoch_loss = 0.0;
        std::size_t n_batches = 0;
        for (std::size_t start = 0; start < order.size(); start += B) {
            std::vector<LabeledPoint> batch;
            for (std::size_t i = start; i < std::min(order.size(), start + B); ++i)
                batch.push_back(train.points[order[i]]);
            auto g = mlp_loss_and_gradients(mlp, batch);
            if (!std::isfinite(g.loss))
                throw std::runtime_error("mlp_train: loss diverged (learning rate too high?)");
            for (std::size_t li = 0; li < mlp.layers.size(); ++li) {
                mlp.layers[li].weights -= config.learning_rate * g.weight_grads[li];
                mlp.layers[li].biases -= config.learning_rate * g.bias_grads[li];
            }
            epoch_loss += g.loss;
            ++n_batches;
        }
        mlp.loss_curve.push_back(epoch_loss / static_cast<double>(n_batches));
    }
}

double mlp_accuracy(const Mlp& mlp, const Dataset& data) {
    if (data.points.empty()) return 0.0;
    std::size_t hits = 0;
    for (const auto& p : data.points) {
        Eigen::Map<const Eigen::VectorXd> x(p.coords.data(), p.coords.size());
        if (mlp_predict(mlp, x).predicted == p.label) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(data.size());
}

}  // namespace hypercover
