#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "hypercover/geometry.hpp"

namespace hypercover {

struct Dataset {
    std::vector<LabeledPoint> points;
    std::vector<std::string> feature_names;
    std::vector<std::string> class_names;

    std::size_t size() const { return points.size(); }
    int n_dims() const { return points.empty() ? 0 : static_cast<int>(points[0].coords.size()); }
    int n_classes() const { return static_cast<int>(class_names.size()); }
};

/// CSV ingestion. label_column may be negative to count from the end
/// (-1 = last). Label strings map to class indices in first-appearance
/// order.
Dataset load_csv(const std::string& path, int label_column = -1, bool has_header = true);

/// IDX image/label pair ingestion (big-endian, magics 0x803/0x801).
/// Pixels scale to [0,1]. max_points > 0 takes a seeded uniform
/// subsample without replacement.
Dataset load_idx(const std::string& images_path, const std::string& labels_path,
                 std::size_t max_points = 0, std::uint64_t seed = 0);

struct PcaModel {
    Eigen::VectorXd mean;           // n
    Eigen::MatrixXd components;     // d x n, orthonormal rows
    Eigen::VectorXd explained_variance;  // d, non-increasing
};

/// Top-d eigenvectors of the sample covariance. Component signs fixed by
/// the largest-magnitude-entry-positive rule so covers reproduce.
PcaModel pca_fit(const Dataset& dataset, int d);

Dataset pca_transform(const PcaModel& model, const Dataset& dataset);

/// Per-axis affine map y = (x - lo) / span fitted on training data;
/// degenerate axes (span 0) map everything to 0.5.
struct AxisMap {
    double lo = 0.0;
    double span = 1.0;  // 0 marks a degenerate axis

    double apply(double x) const { return span == 0.0 ? 0.5 : (x - lo) / span; }
};

struct Normalization {
    std::vector<AxisMap> maps;
};

/// Min-max normalization to [0,1] per axis; returns the fitted maps so
/// evaluation data reuses training statistics.
std::pair<Dataset, Normalization> normalize(const Dataset& dataset);

Dataset apply_normalization(const Normalization& norm, const Dataset& dataset);

struct SplitSpec {
    double train_fraction = 0.7;
    std::uint64_t seed = 0;
};

/// Seeded shuffle; first round(fraction * N) points train, rest evaluate.
std::pair<Dataset, Dataset> split(const Dataset& dataset, const SplitSpec& spec);

}  // namespace hypercover
