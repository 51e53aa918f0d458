#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "hypercover/data.hpp"
#include "hypercover/network.hpp"

namespace hypercover {

struct MlpConfig {
    std::vector<int> hidden_layers = {32};
    double learning_rate = 0.05;
    int epochs = 20;
    int batch_size = 16;
    std::uint64_t init_seed = 0;
};

/// Conventional baseline: relu hidden layers, softmax output, trained by
/// plain mini-batch SGD on cross-entropy.
struct Mlp {
    std::vector<AffineLayer> layers;
    std::vector<double> loss_curve;  // mean training loss per epoch

    int n_inputs() const { return layers.empty() ? 0 : static_cast<int>(layers[0].weights.cols()); }
    int n_outputs() const { return layers.empty() ? 0 : static_cast<int>(layers.back().weights.rows()); }
};

/// Weights ~ N(0, 1/fan_in) per layer, biases zero, deterministic per seed.
Mlp mlp_init(int n_inputs, int n_classes, const MlpConfig& config);

/// Forward pass keeping softmax probabilities.
Prediction mlp_predict(const Mlp& mlp, const Eigen::VectorXd& x);

/// Mean cross-entropy over the batch plus analytic parameter gradients,
/// ordered like mlp.layers. Shared by the SGD loop and the
/// finite-difference checks.
struct MlpGradients {
    double loss = 0.0;
    std::vector<Eigen::MatrixXd> weight_grads;
    std::vector<Eigen::VectorXd> bias_grads;
};

MlpGradients mlp_loss_and_gradients(const Mlp& mlp,
                                    const std::vector<LabeledPoint>& batch);

/// Mini-batch SGD for config.epochs with a per-epoch seeded shuffle.
/// Aborts on NaN loss (learning rate too high).
void mlp_train(Mlp& mlp, const Dataset& train, const MlpConfig& config);

double mlp_accuracy(const Mlp& mlp, const Dataset& data);

}  // namespace hypercover
