#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hypercover/geometry.hpp"
#include "hypercover/rng.hpp"

namespace hypercover {

enum class ScoreMode {
    LiteralZero,        // a class pair with both counts zero scores 0
    ExcludeEmptyPairs,  // such pairs are dropped from the min entirely
};

struct CoverConfig {
    double min_length = 0.1;                         // l
    double max_aspect_ratio = 4.0;                   // r*
    std::uint64_t rng_seed = 0;
    double epsilon = 0.0;                            // 0 means "defaults to l"
    bool fill_porosity = true;
    ScoreMode score_mode = ScoreMode::LiteralZero;

    double effective_epsilon() const { return epsilon > 0.0 ? epsilon : min_length; }
};

/// A finished bisection cover. Leaves are kept flat in build order; the
/// four tracked sets are views by status. working is only nonempty
/// mid-build.
struct Cover {
    Hypercube bounding_cube;
    std::vector<Hypercube> leaves;
    CoverConfig config;
    int n_dims = 0;
    int n_classes = 0;

    std::size_t count(CubeStatus s) const;
    std::vector<const Hypercube*> by_status(CubeStatus s) const;

    /// Leaf index containing x under the half-open rule, or none if x
    /// is outside every leaf (equivalently outside bounding_cube).
    std::optional<std::size_t> find_leaf(std::span<const double> x) const;
};

/// l* of the dataset: the smallest Euclidean distance between two
/// points of different classes. Brute-force pairwise scan.
/// Throws if fewer than two classes are present.
double min_interclass_distance(const std::vector<LabeledPoint>& points);

/// 0 when both counts are zero, else |a - b| / (a + b).
double pair_homogeneity(long count_a, long count_b);

/// Min over unordered class pairs of pair_homogeneity. Throws for m < 2.
double daughter_min_homogeneity(const std::vector<long>& class_counts);

/// Variant driven by the score mode; ExcludeEmptyPairs drops both-zero
/// pairs and scores a pointless daughter 1 (segregated by vacancy).
double daughter_min_homogeneity(const std::vector<long>& class_counts, ScoreMode mode);

/// Axes whose midpoint bisection keeps the daughter extent >= l and the
/// daughter aspect ratio <= r*.
std::vector<int> feasible_axes(const Hypercube& cube, const CoverConfig& config);

struct AxisScore {
    int axis;
    double score;
};

/// Test-bisects each axis and records max over the two daughters of the
/// min pairwise homogeneity.
std::vector<AxisScore> score_axes(const Hypercube& cube,
                                  const std::vector<LabeledPoint>& points,
                                  const std::vector<int>& axes,
                                  int n_classes,
                                  ScoreMode mode = ScoreMode::LiteralZero);

/// Highest-scoring axis; ties drawn uniformly from rng over the tied
/// axes sorted ascending.
int select_bisection_axis(const std::vector<AxisScore>& scores, Rng& rng);

/// Midpoint split. Daughter a takes [lower, mid), daughter b [mid, upper);
/// a point with x[axis] == mid lands in b.
std::pair<Hypercube, Hypercube> bisect(const Hypercube& cube, int axis,
                                       const std::vector<LabeledPoint>& points);

/// Empty / Homogeneous / Inhomogeneous from the contained labels; sets
/// assigned_class for the homogeneous case.
CubeStatus classify_cube(Hypercube& cube, const std::vector<LabeledPoint>& points);

/// Recursive constrained bisection over the bounding box of points.
/// Violating cubes get their majority class (ties -> lowest index).
/// Porosity fill runs at the end unless config says otherwise.
Cover build_cover(const std::vector<LabeledPoint>& points, const CoverConfig& config);

/// Tuned defaults for a normalized training set: l = clamp(l*/2, 0.1, 0.25),
/// r* = 4, epsilon = 2l, exclude-empty-pairs scoring.
CoverConfig recommended_config(const std::vector<LabeledPoint>& points,
                               std::uint64_t seed);

/// Uniform-grid reference partition of the bounding box, cells of edge
/// <= l. Test oracle only; guarded against blowup (n <= 3, <= 1e6 cells).
struct UniformCoverOracle {
    Hypercube domain;
    std::vector<int> bins;           // cells per axis
    std::vector<double> cell_edge;   // extent / bins per axis
    std::vector<int> cell_class;     // -1 empty, -2 ambiguous, else class
    int n_classes = 0;

    static constexpr int kEmpty = -1;
    static constexpr int kAmbiguous = -2;

    std::size_t n_cells() const;
    std::optional<std::size_t> cell_index(std::span<const double> x) const;
    /// Cell class at x, or none when x is outside the domain.
    std::optional<int> classify(std::span<const double> x) const;
    bool any_ambiguous() const;
};

UniformCoverOracle uniform_cover_oracle(const std::vector<LabeledPoint>& points, double l);

}  // namespace hypercover
