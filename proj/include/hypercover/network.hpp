#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "hypercover/cover.hpp"

namespace hypercover {

enum class Activation { Relu, Identity, Softmax };

std::string to_string(Activation a);

struct AffineLayer {
    Eigen::MatrixXd weights;  // rows = output units, cols = input units
    Eigen::VectorXd biases;
    Activation activation = Activation::Identity;
};

/// The cover compiled to an explicit feed-forward net:
///   layer 1 (relu)    per-cube bound inequalities, 2n rows per cube
///   layer 2 (relu)    per-cube residual sums Theta_k
///   layer 3 (relu)    memberships mu_k = ReLU(1 - Theta_k / epsilon)
///   layer 4 (softmax) per-class sums of mu
/// Cube blocks are laid out class-major; class_blocks maps them back to
/// cover leaf ids.
struct CompiledNetwork {
    std::vector<AffineLayer> layers;
    int n_inputs = 0;
    int n_classes = 0;
    double epsilon = 0.0;
    std::vector<std::vector<int>> class_blocks;
};

struct Prediction {
    Eigen::VectorXd scores;  // softmax outputs, sum to 1
    int predicted = 0;       // argmax, ties -> lowest index
};

/// 2n stacked inequality rows for one cube: x inside iff all components
/// of W x + v are <= 0. Rows 0..n-1 encode upper bounds, n..2n-1 lower.
std::pair<Eigen::MatrixXd, Eigen::VectorXd> cube_to_inequalities(const Hypercube& cube);

/// Theta_k: sum of ReLU-rectified inequality residuals; zero iff x is
/// inside or on the boundary.
double theta_k(const Eigen::MatrixXd& weights, const Eigen::VectorXd& biases,
               const Eigen::VectorXd& x);

/// Builds the 4-layer network from every class-assigned leaf. Pass
/// epsilon <= 0 to take the cover config's value. Throws when a class
/// has no supporting leaf or the dense layers would not fit in memory.
CompiledNetwork compile(const Cover& cover, double epsilon = 0.0);

Prediction forward(const CompiledNetwork& net, const Eigen::VectorXd& x);

/// Exact reference: class of the unique leaf containing x, or none when
/// x is outside the cover (or in a still-unassigned empty leaf).
std::optional<int> geometric_classify(const Cover& cover, std::span<const double> x);

/// Fused block evaluator over the cover's boxes. Skips the dense matrix
/// algebra but must agree with the compiled network to 1e-12; usable at
/// scales where the dense layers cannot be materialized.
class BoxEvaluator {
public:
    BoxEvaluator(const Cover& cover, double epsilon = 0.0);

    int n_inputs() const { return n_inputs_; }
    int n_classes() const { return n_classes_; }
    double epsilon() const { return epsilon_; }
    std::size_t n_cubes() const { return cls_.size(); }

    /// Pre-softmax class scores: sums of clamped memberships.
    Eigen::VectorXd class_scores(std::span<const double> x) const;

    /// Unclamped per-class sums of (1 - Theta_k / epsilon); comparison
    /// mode for the clamped semantics, not used for benchmarks.
    Eigen::VectorXd class_scores_unclamped(std::span<const double> x) const;

    Prediction forward(std::span<const double> x) const;

private:
    std::vector<double> lower_;  // cube-major, n per cube, class-major order
    std::vector<double> upper_;
    std::vector<int> cls_;
    int n_inputs_ = 0;
    int n_classes_ = 0;
    double epsilon_ = 0.0;
};

Prediction softmax_predict(const Eigen::VectorXd& pre);

}  // namespace hypercover
